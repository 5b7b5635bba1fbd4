#include "circleflow/driver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include <json.hpp>

#include "circleflow/errors.hpp"
#include "circleflow/kernels.hpp"
#include "circleflow/spectral.hpp"

namespace circleflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kBackendTol = 1e-4;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write to '" + (dir / name).string() + "'");
  return out;
}

json verdict_json(const Verdict& v) {
  return {{"status", v.completed() ? "completed" : "breakdown"},
          {"reason", v.reason},
          {"t", v.t}};
}

json drift_json(const DriftSummary& d) {
  json entries = json::array();
  for (const auto& e : d.entries)
    entries.push_back({{"invariant", e.invariant},
                       {"max_drift", e.max_drift},
                       {"tolerance", e.tolerance},
                       {"pass", e.pass}});
  return {{"entries", entries},
          {"all_pass", d.all_pass},
          {"reliable_horizon", d.reliable_horizon}};
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticsSeries& s) {
  out << "t,orbit_drift,momentum_integral,energy,mean_u,min_phi_u,min_ux,"
         "c1_norm,gamma_min_deriv,kelvin_1,kelvin_sin1,kelvin_cos1\n";
  for (const auto& r : s.records()) {
    out << format_double(r.t) << ',' << format_double(r.orbit_drift) << ','
        << format_double(r.momentum_integral) << ',' << format_double(r.energy)
        << ',' << format_double(r.mean_u) << ',' << format_double(r.min_phi_u)
        << ',' << format_double(r.min_ux) << ',' << format_double(r.c1_norm)
        << ',' << format_double(r.gamma_min_deriv) << ','
        << format_double(r.kelvin[0]) << ',' << format_double(r.kelvin[1])
        << ',' << format_double(r.kelvin[2]) << '\n';
  }
}

json values_json(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

void write_snapshots(std::ostream& out, const RunConfig& cfg,
                     const RunResult& run) {
  json snaps = json::array();
  for (const auto& s : run.trajectory) {
    snaps.push_back({{"t", s.t},
                     {"u", values_json(s.u.values())},
                     {"m", values_json(s.m.values())},
                     {"flow_displacement", values_json(s.flow.displacement())},
                     {"flow_derivative", values_json(s.flow.derivative())}});
  }
  json doc = {{"grid_n", cfg.grid_n},
              {"domain", "[0, 2*pi)"},
              {"snapshots", snaps}};
  out << doc.dump(1, '\t') << '\n';
}

RunResult run_backend(const EquationSpec& spec, const GridFunction& u0,
                      const IntegratorConfig& icfg, RunConfig::Backend b) {
  return b == RunConfig::Backend::lagrangian
             ? integrate_lagrangian(spec, u0, icfg)
             : integrate(spec, u0, icfg);
}

double sup_u_diff(const SimulationState& a, const SimulationState& b) {
  return kernels::reduce_max_abs_diff(a.u.values().data(), b.u.values().data(),
                                      a.u.values().size());
}

int run_landau(const RunConfig& cfg) {
  const Grid grid(cfg.grid_n);
  const LoopField L0 = build_initial_loop(cfg, grid);
  const LLResult run = integrate_ll(L0, integrator_config(cfg));

  const fs::path dir(cfg.output_dir);
  {
    auto out = open_output(dir, "diagnostics.csv");
    out << "t,norm_drift,energy,mean_x,mean_y,mean_z\n";
    for (const auto& r : run.records) {
      out << format_double(r.t) << ',' << format_double(r.norm_drift) << ','
          << format_double(r.energy) << ',' << format_double(r.mean_vector[0])
          << ',' << format_double(r.mean_vector[1]) << ','
          << format_double(r.mean_vector[2]) << '\n';
    }
  }

  // Tolerances of the loop-field invariant suite.
  double norm_drift = 0.0, energy_drift = 0.0, mean_drift = 0.0;
  const auto& first = run.records.front();
  for (const auto& r : run.records) {
    norm_drift = std::max(norm_drift, r.norm_drift);
    energy_drift = std::max(energy_drift,
                            std::abs(r.energy - first.energy) /
                                (1.0 + std::abs(first.energy)));
    for (int c = 0; c < 3; ++c)
      mean_drift = std::max(
          mean_drift, std::abs(r.mean_vector[static_cast<std::size_t>(c)] -
                               first.mean_vector[static_cast<std::size_t>(c)]));
  }
  json drift = {{"entries",
                 json::array({{{"invariant", "pointwise_norm"},
                               {"max_drift", norm_drift},
                               {"tolerance", 1e-7},
                               {"pass", norm_drift <= 1e-7}},
                              {{"invariant", "energy"},
                               {"max_drift", energy_drift},
                               {"tolerance", 1e-8},
                               {"pass", energy_drift <= 1e-8}},
                              {{"invariant", "mean_vector"},
                               {"max_drift", mean_drift},
                               {"tolerance", 1e-9},
                               {"pass", mean_drift <= 1e-9}}})},
                {"all_pass", norm_drift <= 1e-7 && energy_drift <= 1e-8 &&
                                 mean_drift <= 1e-9}};

  {
    auto out = open_output(dir, "summary.json");
    json doc = {{"equation", "landau_lifschitz"},
                {"grid_n", cfg.grid_n},
                {"dt", cfg.dt},
                {"t_end", cfg.t_end},
                {"backend", "eulerian"},
                {"records", run.records.size()},
                {"verdict", verdict_json(run.verdict)},
                {"drift_report", drift}};
    out << doc.dump(1, '\t') << '\n';
  }
  if (cfg.emit_snapshots) {
    auto out = open_output(dir, "snapshots.json");
    json snaps = json::array();
    for (std::size_t i = 0; i < run.trajectory.size(); ++i) {
      const auto& L = run.trajectory[i];
      snaps.push_back({{"t", run.times[i]},
                       {"Lx", values_json(L.component(0))},
                       {"Ly", values_json(L.component(1))},
                       {"Lz", values_json(L.component(2))}});
    }
    json doc = {{"grid_n", cfg.grid_n},
                {"domain", "[0, 2*pi)"},
                {"snapshots", snaps}};
    out << doc.dump(1, '\t') << '\n';
  }
  return run.verdict.completed() ? 0 : 2;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int cmd_run(const RunConfig& cfg) {
  try {
    if (is_landau(cfg)) return run_landau(cfg);

    const CatalogEntry entry = preset(cfg.equation);
    const Grid grid(cfg.grid_n);
    const GridFunction u0 = build_initial(cfg, grid);
    const IntegratorConfig icfg = integrator_config(cfg);
    const SignCondition sc = sign_condition(entry.spec, u0);

    const bool both = cfg.backend == RunConfig::Backend::both;
    const RunConfig::Backend primary =
        cfg.backend == RunConfig::Backend::lagrangian
            ? RunConfig::Backend::lagrangian
            : RunConfig::Backend::eulerian;
    const RunResult run = run_backend(entry.spec, u0, icfg, primary);

    const fs::path dir(cfg.output_dir);
    {
      auto out = open_output(dir, "diagnostics.csv");
      write_diagnostics_csv(out, run.diagnostics);
    }

    json doc = {{"equation", entry.spec.name},
                {"phi", entry.spec.phi.name()},
                {"lambda", entry.spec.lambda},
                {"gauge", entry.spec.gauge == Gauge::fixed_mean ? "fixed_mean"
                                                                : "none"},
                {"homogeneous", entry.spec.homogeneous},
                {"grid_n", cfg.grid_n},
                {"dt", cfg.dt},
                {"t_end", cfg.t_end},
                {"backend", both ? "both"
                                 : (primary == RunConfig::Backend::lagrangian
                                        ? "lagrangian"
                                        : "eulerian")},
                {"records", run.diagnostics.records().size()},
                {"verdict", verdict_json(run.verdict)},
                {"sign_condition",
                 {{"holds", sc.holds}, {"min_value", sc.min_value}}},
                {"drift_report", drift_json(drift_report(run.diagnostics))}};

    bool completed = run.verdict.completed();
    if (both) {
      const RunResult lag =
          run_backend(entry.spec, u0, icfg, RunConfig::Backend::lagrangian);
      {
        auto out = open_output(dir, "diagnostics_lagrangian.csv");
        write_diagnostics_csv(out, lag.diagnostics);
      }
      double disc = 0.0;
      const std::size_t n =
          std::min(run.trajectory.size(), lag.trajectory.size());
      for (std::size_t i = 0; i < n; ++i)
        disc = std::max(disc, sup_u_diff(run.trajectory[i], lag.trajectory[i]));
      doc["lagrangian_verdict"] = verdict_json(lag.verdict);
      doc["backend_discrepancy"] = disc;
      completed = completed && lag.verdict.completed();
    }

    if (cfg.emit_snapshots) {
      auto out = open_output(dir, "snapshots.json");
      write_snapshots(out, cfg, run);
    }
    {
      auto out = open_output(dir, "summary.json");
      out << doc.dump(1, '\t') << '\n';
    }
    return completed ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_convergence(const RunConfig& cfg, const std::vector<double>& dts,
                    const std::vector<int>& ns) {
  try {
    if (is_landau(cfg))
      throw Error("convergence studies cover the scalar family only");
    if (dts.empty() == ns.empty())
      throw Error("specify exactly one of --dts or --ns");
    if (cfg.backend == RunConfig::Backend::both)
      throw Error("convergence studies use a single backend");

    const CatalogEntry entry = preset(cfg.equation);
    const fs::path dir(cfg.output_dir);
    json doc = {{"equation", entry.spec.name}, {"t_end", cfg.t_end}};
    bool any_breakdown = false;

    auto final_u = [&](int n, double dt) {
      RunConfig rc = cfg;
      IntegratorConfig icfg = integrator_config(cfg);
      icfg.dt = dt;
      icfg.record_every = 1 << 28;  // final state only
      const Grid grid(n);
      const GridFunction u0 = build_initial(rc, grid);
      RunResult run = run_backend(entry.spec, u0, icfg, cfg.backend);
      return std::make_pair(run.trajectory.back().u,
                            run.verdict.completed());
    };

    if (!dts.empty()) {
      if (dts.size() < 3) throw Error("need at least 3 time steps");
      std::vector<double> sorted(dts);
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      const double dt_ref = sorted.back() / 4.0;

      std::vector<std::future<std::pair<GridFunction, bool>>> jobs;
      for (double dt : sorted)
        jobs.push_back(std::async(std::launch::async, final_u, cfg.grid_n, dt));
      // The reference run (the longest) stays on this thread.
      const auto [u_ref, ref_ok] = final_u(cfg.grid_n, dt_ref);
      any_breakdown |= !ref_ok;

      std::vector<double> errors;
      for (auto& jb : jobs) {
        auto [u, ok] = jb.get();
        any_breakdown |= !ok;
        errors.push_back(kernels::reduce_max_abs_diff(
            u.values().data(), u_ref.values().data(), u.values().size()));
      }

      std::vector<double> orders;
      for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        orders.push_back(std::log(errors[i] / errors[i + 1]) /
                         std::log(sorted[i] / sorted[i + 1]));

      {
        auto out = open_output(dir, "convergence.csv");
        out << "dt,error,observed_order\n";
        for (std::size_t i = 0; i < sorted.size(); ++i) {
          out << format_double(sorted[i]) << ',' << format_double(errors[i])
              << ',' << (i < orders.size() ? format_double(orders[i]) : "")
              << '\n';
        }
      }
      const bool degenerate =
          *std::max_element(errors.begin(), errors.end()) < 1e-13;
      const double order = orders.empty() || degenerate ? 0.0 : orders.back();
      doc["mode"] = "temporal";
      doc["grid_n"] = cfg.grid_n;
      doc["reference_dt"] = dt_ref;
      doc["errors"] = errors;
      doc["orders"] = orders;
      doc["degenerate"] = degenerate;
      doc["temporal_order"] = order;
      doc["order_in_range"] = degenerate || (order >= 3.6 && order <= 4.4);
    } else {
      if (ns.size() < 3) throw Error("need at least 3 grid sizes");
      std::vector<int> sorted(ns);
      std::sort(sorted.begin(), sorted.end());
      const int n_ref = sorted.back();
      for (int n : sorted)
        if (!((n > 0) && ((n & (n - 1)) == 0)) || n_ref % n != 0)
          throw Error("grid sizes must be nested powers of two");

      std::vector<std::future<std::pair<GridFunction, bool>>> jobs;
      for (int n : sorted)
        jobs.push_back(std::async(std::launch::async, final_u, n, cfg.dt));

      std::vector<GridFunction> finals;
      for (auto& jb : jobs) {
        auto [u, ok] = jb.get();
        any_breakdown |= !ok;
        finals.push_back(std::move(u));
      }
      const GridFunction& ref = finals.back();
      std::vector<double> errors;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const int stride = n_ref / sorted[i];
        double e = 0.0;
        for (int k = 0; k < sorted[i]; ++k)
          e = std::max(e, std::abs(finals[i][k] - ref[k * stride]));
        errors.push_back(e);
      }
      std::vector<double> ratios;
      for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        ratios.push_back(errors[i] > 1e-12 ? errors[i + 1] / errors[i] : 0.0);

      {
        auto out = open_output(dir, "convergence.csv");
        out << "n,error,ratio\n";
        for (std::size_t i = 0; i < errors.size(); ++i) {
          out << sorted[i] << ',' << format_double(errors[i]) << ','
              << (i < ratios.size() ? format_double(ratios[i]) : "") << '\n';
        }
      }
      bool collapse = true;
      for (double r : ratios) collapse = collapse && r < 0.125;
      doc["mode"] = "spatial";
      doc["dt"] = cfg.dt;
      doc["ns"] = sorted;
      doc["errors"] = errors;
      doc["ratios"] = ratios;
      doc["collapse_ok"] = collapse;
    }

    doc["any_breakdown"] = any_breakdown;
    {
      auto out = open_output(dir, "convergence_summary.json");
      out << doc.dump(1, '\t') << '\n';
    }
    return any_breakdown ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_compare_backends(const RunConfig& cfg) {
  try {
    if (is_landau(cfg))
      throw Error("compare-backends covers the scalar family only");
    const CatalogEntry entry = preset(cfg.equation);
    const Grid grid(cfg.grid_n);
    const GridFunction u0 = build_initial(cfg, grid);
    const IntegratorConfig icfg = integrator_config(cfg);

    auto eul = std::async(std::launch::async, [&] {
      return integrate(entry.spec, u0, icfg);
    });
    RunResult lag = integrate_lagrangian(entry.spec, u0, icfg);
    RunResult run = eul.get();

    const std::size_t n = std::min(run.trajectory.size(), lag.trajectory.size());
    double worst = 0.0;
    const fs::path dir(cfg.output_dir);
    {
      auto out = open_output(dir, "compare.csv");
      out << "t,sup_diff\n";
      for (std::size_t i = 0; i < n; ++i) {
        const double d = sup_u_diff(run.trajectory[i], lag.trajectory[i]);
        worst = std::max(worst, d);
        out << format_double(run.trajectory[i].t) << ',' << format_double(d)
            << '\n';
      }
    }
    const bool completed =
        run.verdict.completed() && lag.verdict.completed();
    {
      auto out = open_output(dir, "compare_summary.json");
      json doc = {{"equation", entry.spec.name},
                  {"grid_n", cfg.grid_n},
                  {"dt", cfg.dt},
                  {"t_end", cfg.t_end},
                  {"eulerian_verdict", verdict_json(run.verdict)},
                  {"lagrangian_verdict", verdict_json(lag.verdict)},
                  {"max_discrepancy", worst},
                  {"tolerance", kBackendTol},
                  {"pass", completed && worst <= kBackendTol}};
      out << doc.dump(1, '\t') << '\n';
    }
    return completed ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_catalog(std::ostream& out) {
  json arr = json::array();
  for (const auto& e : catalog()) {
    arr.push_back({{"name", e.spec.name},
                   {"phi", e.spec.phi.name()},
                   {"lambda", e.spec.lambda},
                   {"gauge", e.spec.gauge == Gauge::fixed_mean ? "fixed_mean"
                                                               : "none"},
                   {"homogeneous", e.spec.homogeneous},
                   {"reference", e.reference},
                   {"known_invariants", e.known_invariants},
                   {"notes", e.notes}});
  }
  arr.push_back(
      {{"name", "landau_lifschitz"},
       {"state", "R^3-valued loop, dL/dt = L x L''"},
       {"reference", "Landau-Lifschitz spin chain; equivalent to the vortex "
                     "filament flow via L = c'"},
       {"known_invariants",
        json::array({"pointwise_norm", "energy", "mean_vector"})},
       {"notes", "initial conditions: spin_wave(theta, wavenumber) or "
                 "random_spin(seed, kmax, amplitude)"}});
  out << arr.dump(1, '\t') << '\n';
  return 0;
}

}  // namespace circleflow
