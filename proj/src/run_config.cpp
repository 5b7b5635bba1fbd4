#include "circleflow/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "circleflow/errors.hpp"
#include "circleflow/initial.hpp"
#include "circleflow/kernels.hpp"

namespace circleflow {

namespace {

using nlohmann::json;

InitialCondition parse_ic(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error("initial_condition must be an object with a 'kind' field");
  InitialCondition ic;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    ic.kind = InitialCondition::Kind::constant;
    ic.value = j.at("value").get<double>();
  } else if (kind == "sine") {
    ic.kind = InitialCondition::Kind::sine;
    ic.amplitude = j.at("amplitude").get<double>();
    ic.wavenumber = j.at("wavenumber").get<int>();
  } else if (kind == "mean_plus_sine") {
    ic.kind = InitialCondition::Kind::mean_plus_sine;
    ic.mean = j.at("mean").get<double>();
    ic.amplitude = j.at("amplitude").get<double>();
    ic.wavenumber = j.at("wavenumber").get<int>();
  } else if (kind == "random_bandlimited") {
    ic.kind = InitialCondition::Kind::random_bandlimited;
    ic.seed = j.at("seed").get<std::uint64_t>();
    ic.kmax = j.at("kmax").get<int>();
    ic.amplitude = j.at("amplitude").get<double>();
  } else if (kind == "spin_wave") {
    ic.kind = InitialCondition::Kind::spin_wave;
    ic.theta = j.at("theta").get<double>();
    ic.wavenumber = j.at("wavenumber").get<int>();
  } else if (kind == "random_spin") {
    ic.kind = InitialCondition::Kind::random_spin;
    ic.seed = j.at("seed").get<std::uint64_t>();
    ic.kmax = j.at("kmax").get<int>();
    ic.amplitude = j.at("amplitude").get<double>();
  } else {
    throw Error("unknown initial_condition kind '" + kind +
                "'; valid kinds: constant, sine, mean_plus_sine, "
                "random_bandlimited, spin_wave, random_spin");
  }
  return ic;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

bool is_landau(const RunConfig& cfg) {
  return cfg.equation == "landau_lifschitz";
}

RunConfig parse_run_config(const json& j) {
  RunConfig cfg;
  if (!j.is_object()) throw Error("run config must be a JSON object");

  if (j.contains("equation")) {
    const auto& eq = j.at("equation");
    if (eq.is_string()) {
      cfg.equation = eq.get<std::string>();
    } else if (eq.is_object()) {
      // Custom member of the family: {"r": 2, "lambda": 2.5}.
      const int r = eq.at("r").get<int>();
      const double lambda = eq.at("lambda").get<double>();
      char buf[64];
      std::snprintf(buf, sizeof(buf), "sobolev(%d,%.17g)", r, lambda);
      cfg.equation = buf;
    } else {
      throw Error("equation must be a preset name or {r, lambda}");
    }
  }
  if (j.contains("initial_condition")) cfg.ic = parse_ic(j.at("initial_condition"));
  cfg.grid_n = j.value("grid_n", cfg.grid_n);
  cfg.dt = j.value("dt", cfg.dt);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.record_every = j.value("record_every", cfg.record_every);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.emit_snapshots = j.value("emit_snapshots", cfg.emit_snapshots);
  cfg.dealias = j.value("dealias", cfg.dealias);
  cfg.breakdown_gamma_min = j.value("breakdown_gamma_min", cfg.breakdown_gamma_min);
  cfg.breakdown_c1 = j.value("breakdown_c1", cfg.breakdown_c1);

  if (j.contains("backend")) {
    const std::string b = j.at("backend").get<std::string>();
    if (b == "eulerian")
      cfg.backend = RunConfig::Backend::eulerian;
    else if (b == "lagrangian")
      cfg.backend = RunConfig::Backend::lagrangian;
    else if (b == "both")
      cfg.backend = RunConfig::Backend::both;
    else
      throw Error("backend must be eulerian, lagrangian or both");
  }

  if (!power_of_two(cfg.grid_n) || cfg.grid_n < 32)
    throw Error("grid_n must be a power of two and at least 32");
  validate(integrator_config(cfg));

  // Validate the equation name early so unknown presets fail before any IO.
  if (!is_landau(cfg)) preset(cfg.equation);

  // CFL-style sanity check, a warning only.
  double umax = 0.0;
  Grid grid(cfg.grid_n);
  if (is_landau(cfg)) {
    const LoopField L0 = build_initial_loop(cfg, grid);
    for (int i = 0; i < grid.size(); ++i) umax = std::max(umax, L0.norm_at(i));
  } else {
    const GridFunction u0 = build_initial(cfg, grid);
    umax = kernels::reduce_max_abs(u0.values().data(), u0.values().size());
  }
  const double limit = M_PI / cfg.grid_n;
  if (cfg.dt * umax > limit) {
    std::fprintf(stderr,
                 "warning: dt * max|u0| = %.3g exceeds pi/grid_n = %.3g; "
                 "the fixed-step integration may be inaccurate or unstable\n",
                 cfg.dt * umax, limit);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("cannot parse config file '" + path + "': " + e.what());
  }
  return parse_run_config(j);
}

GridFunction build_initial(const RunConfig& cfg, const Grid& grid) {
  switch (cfg.ic.kind) {
    case InitialCondition::Kind::constant:
      return ic_constant(grid, cfg.ic.value);
    case InitialCondition::Kind::sine:
      return ic_sine(grid, cfg.ic.amplitude, cfg.ic.wavenumber);
    case InitialCondition::Kind::mean_plus_sine:
      return ic_mean_plus_sine(grid, cfg.ic.mean, cfg.ic.amplitude,
                               cfg.ic.wavenumber);
    case InitialCondition::Kind::random_bandlimited:
      return ic_random_bandlimited(grid, cfg.ic.seed, cfg.ic.kmax,
                                   cfg.ic.amplitude);
    default:
      throw Error("initial condition kind requires the landau_lifschitz "
                  "equation");
  }
}

LoopField build_initial_loop(const RunConfig& cfg, const Grid& grid) {
  switch (cfg.ic.kind) {
    case InitialCondition::Kind::spin_wave:
      return spin_wave(grid, cfg.ic.theta, cfg.ic.wavenumber, 0.0);
    case InitialCondition::Kind::random_spin:
      return ic_random_spin(grid, cfg.ic.seed, cfg.ic.kmax, cfg.ic.amplitude);
    default:
      throw Error("landau_lifschitz requires a spin_wave or random_spin "
                  "initial condition");
  }
}

IntegratorConfig integrator_config(const RunConfig& cfg) {
  IntegratorConfig ic;
  ic.dt = cfg.dt;
  ic.t_end = cfg.t_end;
  ic.dealias = cfg.dealias;
  ic.breakdown_gamma_min = cfg.breakdown_gamma_min;
  ic.breakdown_c1 = cfg.breakdown_c1;
  ic.record_every = cfg.record_every;
  return ic;
}

}  // namespace circleflow
