#include "circleflow/evolution.hpp"

#include <cmath>
#include <utility>

#include "circleflow/errors.hpp"
#include "circleflow/kernels.hpp"
#include "circleflow/spectral.hpp"

namespace circleflow {

namespace {

using Vec = std::vector<double>;

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

Vec add_scaled(const Vec& y, double c, const Vec& k) {
  Vec out(y.size());
  kernels::add_scaled(out.data(), y.data(), c, k.data(), y.size());
  return out;
}

Vec rk4_combine(const Vec& y, double h, const Vec& k1, const Vec& k2,
                const Vec& k3, const Vec& k4) {
  Vec out(y.size());
  kernels::rk4_combine(out.data(), y.data(), h, k1.data(), k2.data(),
                       k3.data(), k4.data(), y.size());
  return out;
}

GridFunction maybe_dealias(GridFunction f, bool do_dealias) {
  return do_dealias ? dealias(f) : std::move(f);
}

// Quadratic terms with the velocity already in hand (shared between the
// public rhs and the integrator stages, which reuse u for the flow equation).
GridFunction rhs_momentum_impl(const EquationSpec& spec, const GridFunction& u,
                               const GridFunction& m, bool do_dealias) {
  const GridFunction ud = maybe_dealias(u, do_dealias);
  const GridFunction md = maybe_dealias(m, do_dealias);
  const GridFunction mx = deriv(md, 1);
  const GridFunction ux = deriv(ud, 1);
  Vec out(static_cast<std::size_t>(m.size()));
  kernels::quadratic_terms(out.data(), ud.values().data(), mx.values().data(),
                           ux.values().data(), md.values().data(), spec.lambda,
                           out.size());
  return maybe_dealias(GridFunction::unchecked(m.grid(), std::move(out)),
                       do_dealias);
}

struct EulerianDeriv {
  Vec dm;
  Vec ddisp;
};

EulerianDeriv eulerian_stage(const EquationSpec& spec, const Grid& grid,
                             const Vec& m_vals, const Vec& disp_vals,
                             double gauge_mean, bool do_dealias) {
  const GridFunction m = GridFunction::unchecked(grid, m_vals);
  const GridFunction u = velocity(spec, m, gauge_mean);
  GridFunction dm = rhs_momentum_impl(spec, u, m, do_dealias);

  // Flow equation dgamma/dt = u o gamma.
  std::vector<double> pts(disp_vals.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = grid.point(static_cast<int>(i)) + disp_vals[i];
  Vec ddisp = Interpolant(u).eval(pts);

  Vec dm_vals(dm.values().begin(), dm.values().end());
  return {std::move(dm_vals), std::move(ddisp)};
}

}  // namespace

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw Error("dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw Error("t_end must be non-negative");
  if (!(cfg.breakdown_gamma_min > 0.0) || !(cfg.breakdown_c1 > 0.0))
    throw Error("breakdown thresholds must be positive");
  if (cfg.record_every < 1) throw Error("record_every must be at least 1");
}

GridFunction rhs_momentum(const EquationSpec& spec, const GridFunction& m,
                          double gauge_mean, bool do_dealias) {
  const GridFunction u = velocity(spec, m, gauge_mean);
  return rhs_momentum_impl(spec, u, m, do_dealias);
}

SimulationState initial_state(const EquationSpec& spec,
                              const GridFunction& u0) {
  validate(spec);
  if (!u0.finite()) throw Error("non-finite field");
  GridFunction m0 = apply_phi(spec.phi, u0);
  return SimulationState{0.0, u0, std::move(m0),
                         FlowMap::identity(u0.grid()), mean(u0)};
}

StepResult step(const EquationSpec& spec, const SimulationState& state,
                const IntegratorConfig& cfg) {
  const Grid& grid = state.u.grid();
  const double dt = cfg.dt;
  const Vec m0(state.m.values().begin(), state.m.values().end());
  const Vec d0(state.flow.displacement().begin(),
               state.flow.displacement().end());

  const auto k1 =
      eulerian_stage(spec, grid, m0, d0, state.gauge_mean, cfg.dealias);
  const auto k2 = eulerian_stage(spec, grid, add_scaled(m0, dt / 2, k1.dm),
                                 add_scaled(d0, dt / 2, k1.ddisp),
                                 state.gauge_mean, cfg.dealias);
  const auto k3 = eulerian_stage(spec, grid, add_scaled(m0, dt / 2, k2.dm),
                                 add_scaled(d0, dt / 2, k2.ddisp),
                                 state.gauge_mean, cfg.dealias);
  const auto k4 = eulerian_stage(spec, grid, add_scaled(m0, dt, k3.dm),
                                 add_scaled(d0, dt, k3.ddisp),
                                 state.gauge_mean, cfg.dealias);

  Vec m_new = rk4_combine(m0, dt, k1.dm, k2.dm, k3.dm, k4.dm);
  Vec d_new = rk4_combine(d0, dt, k1.ddisp, k2.ddisp, k3.ddisp, k4.ddisp);
  const double t_new = state.t + dt;

  if (!all_finite(m_new) || !all_finite(d_new))
    return {state, Verdict::breakdown("non-finite state", t_new)};

  FlowMap flow = FlowMap::from_displacement(grid, std::move(d_new));
  GridFunction m = GridFunction::unchecked(grid, std::move(m_new));
  GridFunction u = velocity(spec, m, state.gauge_mean);

  SimulationState next{t_new, std::move(u), std::move(m), std::move(flow),
                       state.gauge_mean};

  std::optional<Verdict> breakdown;
  const double gmin = next.flow.min_derivative();
  if (gmin < cfg.breakdown_gamma_min) {
    breakdown = Verdict::breakdown(
        "flow map degeneration: min gamma' = " + std::to_string(gmin), t_new);
  } else {
    const double c1 = c1_norm(next.u);
    if (c1 > cfg.breakdown_c1)
      breakdown = Verdict::breakdown(
          "C1 norm exceeded threshold: " + std::to_string(c1), t_new);
  }
  return {std::move(next), std::move(breakdown)};
}

namespace {

long long step_count(const IntegratorConfig& cfg) {
  return std::llround(cfg.t_end / cfg.dt);
}

template <typename StepFn, typename RecordFn>
RunResult run_loop(const EquationSpec& spec, const IntegratorConfig& cfg,
                   StepFn&& advance, RecordFn&& record) {
  RunResult out{{}, DiagnosticsSeries(spec), {}};
  record(out, /*terminal=*/false);

  const long long n = step_count(cfg);
  for (long long i = 1; i <= n; ++i) {
    std::optional<Verdict> bd;
    try {
      bd = advance();
    } catch (const Error& e) {
      // A stage threw (degenerate map, gauge violation): terminal state is
      // the last valid one.
      out.verdict = Verdict::breakdown(e.what(), out.diagnostics.records().empty()
                                                     ? 0.0
                                                     : out.diagnostics.records().back().t);
      return out;
    }
    if (bd) {
      record(out, /*terminal=*/true);
      out.verdict = *bd;
      return out;
    }
    if (i % cfg.record_every == 0 || i == n) record(out, false);
  }
  out.verdict = Verdict{Verdict::Status::completed, "", cfg.dt * n};
  return out;
}

}  // namespace

RunResult integrate(const EquationSpec& spec, const GridFunction& u0,
                    const IntegratorConfig& cfg) {
  validate(spec);
  validate(cfg);
  // Project the data onto the computational band. Band-limited input is
  // unchanged; this only strips super-cutoff rounding junk, which would
  // otherwise sit frozen in m (the dealiased rhs never updates those modes)
  // and floor the orbit-invariant diagnostics.
  SimulationState state =
      initial_state(spec, cfg.dealias ? dealias(u0) : u0);
  const GridFunction m0 = state.m;

  auto advance = [&]() -> std::optional<Verdict> {
    StepResult r = step(spec, state, cfg);
    state = std::move(r.state);
    return r.breakdown;
  };
  auto record = [&](RunResult& out, bool terminal) {
    // After a non-finite breakdown the state was not advanced; skip rather
    // than record twice.
    if (terminal && !out.trajectory.empty() &&
        out.trajectory.back().t == state.t)
      return;
    out.diagnostics.append(
        evaluate_record(spec, state.t, state.u, state.m, state.flow, m0));
    out.trajectory.push_back(state);
  };
  return run_loop(spec, cfg, advance, record);
}

GridFunction rhs_lagrangian(const EquationSpec& spec, const FlowMap& gamma,
                            const GridFunction& gammadot, bool do_dealias) {
  if (!(gamma.grid() == gammadot.grid()))
    throw Error("flow map and velocity live on different grids");
  if (gamma.min_derivative() <= 0.0) throw Error("flow map degenerate");

  // u = gammadot o gamma^{-1} on the grid.
  const FlowMap inv = invert_circle_map(gamma);
  Vec u_vals = Interpolant(gammadot).eval(inv.forward_points());
  const GridFunction u =
      GridFunction::unchecked(gamma.grid(), std::move(u_vals));

  // Eulerian-side assembly -Phi^{-1}( v (Phi v)' + lambda v' Phi v
  //                                   - Phi(v v') ), all products pointwise
  // from the dealiased velocity.
  const GridFunction v = maybe_dealias(u, do_dealias);
  const GridFunction phiv = apply_phi(spec.phi, v);
  const GridFunction vx = deriv(v, 1);
  const GridFunction phivx = deriv(phiv, 1);

  Vec q(static_cast<std::size_t>(v.size()));
  kernels::quadratic_terms(q.data(), v.values().data(), phivx.values().data(),
                           vx.values().data(), phiv.values().data(),
                           spec.lambda, q.size());
  const GridFunction qd = maybe_dealias(
      GridFunction::unchecked(gamma.grid(), std::move(q)), do_dealias);

  Vec vvx(static_cast<std::size_t>(v.size()));
  kernels::mul(vvx.data(), v.values().data(), vx.values().data(), vvx.size());
  const GridFunction advec = apply_phi(
      spec.phi, maybe_dealias(GridFunction::unchecked(gamma.grid(),
                                                      std::move(vvx)),
                              do_dealias));

  Vec arg(static_cast<std::size_t>(v.size()));
  kernels::add_scaled(arg.data(), qd.values().data(), 1.0,
                      advec.values().data(), arg.size());
  // The argument has zero mean and du/dt + u u' has gauge mean 0 in every
  // preset's gauge, so the inversion always uses gauge_mean = 0.
  const GridFunction accel = invert_phi(
      spec.phi, GridFunction::unchecked(gamma.grid(), std::move(arg)), 0.0);

  // Compose back with gamma.
  Vec f = Interpolant(accel).eval(gamma.forward_points());
  return GridFunction::unchecked(gamma.grid(), std::move(f));
}

RunResult integrate_lagrangian(const EquationSpec& spec,
                               const GridFunction& u0,
                               const IntegratorConfig& cfg) {
  validate(spec);
  validate(cfg);
  if (!u0.finite()) throw Error("non-finite field");

  const Grid& grid = u0.grid();
  const GridFunction u00 = cfg.dealias ? dealias(u0) : u0;
  const GridFunction m0 = apply_phi(spec.phi, u00);
  const double gauge_mean = mean(u00);

  Vec disp(static_cast<std::size_t>(grid.size()), 0.0);
  Vec w(u00.values().begin(), u00.values().end());
  double t = 0.0;

  struct LagDeriv {
    Vec ddisp;
    Vec dw;
  };
  auto stage = [&](const Vec& d, const Vec& wd) -> LagDeriv {
    FlowMap gamma = FlowMap::from_displacement(grid, d);
    GridFunction gdot = GridFunction::unchecked(grid, wd);
    GridFunction acc = rhs_lagrangian(spec, gamma, gdot, cfg.dealias);
    return {wd, Vec(acc.values().begin(), acc.values().end())};
  };

  auto reconstruct = [&]() -> SimulationState {
    FlowMap gamma = FlowMap::from_displacement(grid, disp);
    const FlowMap inv = invert_circle_map(gamma);
    Vec u_vals =
        Interpolant(GridFunction::unchecked(grid, w)).eval(inv.forward_points());
    GridFunction u = GridFunction::unchecked(grid, std::move(u_vals));
    GridFunction m = apply_phi(spec.phi, u);
    return SimulationState{t, std::move(u), std::move(m), std::move(gamma),
                           gauge_mean};
  };

  // Slope diagnostics in Lagrangian form: u_x o gamma = w' / gamma'. The
  // advected sample points concentrate where the flow compresses, so this
  // tracks a forming gradient blowup far beyond the uniform grid's reach.
  auto lagrangian_slopes = [&](const FlowMap& gamma, double& min_ux,
                               double& c1) {
    const GridFunction wx = deriv(GridFunction::unchecked(grid, w), 1);
    min_ux = wx[0] / gamma.derivative()[0];
    double max_abs_ux = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      const double s = wx[i] / gamma.derivative()[static_cast<std::size_t>(i)];
      min_ux = std::min(min_ux, s);
      max_abs_ux = std::max(max_abs_ux, std::abs(s));
    }
    c1 = kernels::reduce_max_abs(w.data(), w.size()) + max_abs_ux;
  };

  auto advance = [&]() -> std::optional<Verdict> {
    const double dt = cfg.dt;
    const auto k1 = stage(disp, w);
    const auto k2 =
        stage(add_scaled(disp, dt / 2, k1.ddisp), add_scaled(w, dt / 2, k1.dw));
    const auto k3 =
        stage(add_scaled(disp, dt / 2, k2.ddisp), add_scaled(w, dt / 2, k2.dw));
    const auto k4 =
        stage(add_scaled(disp, dt, k3.ddisp), add_scaled(w, dt, k3.dw));
    Vec disp_new =
        rk4_combine(disp, dt, k1.ddisp, k2.ddisp, k3.ddisp, k4.ddisp);
    Vec w_new = rk4_combine(w, dt, k1.dw, k2.dw, k3.dw, k4.dw);
    const double t_new = t + dt;
    if (!all_finite(disp_new) || !all_finite(w_new))
      return Verdict::breakdown("non-finite state", t_new);
    disp = std::move(disp_new);
    w = std::move(w_new);
    t = t_new;

    FlowMap gamma = FlowMap::from_displacement(grid, disp);
    const double gmin = gamma.min_derivative();
    if (gmin < cfg.breakdown_gamma_min)
      return Verdict::breakdown(
          "flow map degeneration: min gamma' = " + std::to_string(gmin), t);
    double min_ux = 0.0, c1 = 0.0;
    lagrangian_slopes(gamma, min_ux, c1);
    if (c1 > cfg.breakdown_c1)
      return Verdict::breakdown(
          "C1 norm exceeded threshold: " + std::to_string(c1), t);
    return std::nullopt;
  };
  auto record = [&](RunResult& out, bool terminal) {
    if (terminal && !out.trajectory.empty() && out.trajectory.back().t == t)
      return;
    SimulationState s = reconstruct();
    DiagnosticsRecord r = evaluate_record(spec, s.t, s.u, s.m, s.flow, m0);
    lagrangian_slopes(s.flow, r.min_ux, r.c1_norm);
    out.diagnostics.append(r);
    out.trajectory.push_back(std::move(s));
  };
  return run_loop(spec, cfg, advance, record);
}

}  // namespace circleflow
