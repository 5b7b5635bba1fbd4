#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circleflow/equations.hpp"
#include "circleflow/flow_map.hpp"
#include "circleflow/invariants.hpp"

namespace circleflow {

/// Fixed-step RK4 configuration and the breakdown policy: classical
/// solutions cease at wave breaking, so a run terminates once min gamma'
/// or the C1 norm crosses its threshold.
struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  bool dealias = true;
  double breakdown_gamma_min = 1e-4;
  double breakdown_c1 = 1e6;
  int record_every = 10;
};

void validate(const IntegratorConfig& cfg);

/// Eulerian state: velocity u, momentum m = Phi u, and the flow map gamma
/// (with gamma') co-evolved for invariant evaluation. gauge_mean is the
/// conserved velocity mean of fixed-mean presets.
struct SimulationState {
  double t = 0.0;
  GridFunction u;
  GridFunction m;
  FlowMap flow;
  double gauge_mean = 0.0;
};

struct Verdict {
  enum class Status { completed, breakdown };
  Status status = Status::completed;
  std::string reason;
  double t = 0.0;

  bool completed() const { return status == Status::completed; }
  static Verdict breakdown(std::string reason, double t) {
    return {Status::breakdown, std::move(reason), t};
  }
};

struct StepResult {
  SimulationState state;
  std::optional<Verdict> breakdown;
};

struct RunResult {
  std::vector<SimulationState> trajectory;  // snapshots at record cadence
  DiagnosticsSeries diagnostics;
  Verdict verdict;
};

/// dm/dt = dealias(-u m' - lambda u' m) with the quadratic terms formed
/// pointwise from dealiased factors; u is recovered from m under the spec's
/// gauge.
GridFunction rhs_momentum(const EquationSpec& spec, const GridFunction& m,
                          double gauge_mean, bool do_dealias = true);

/// State at t = 0: u0, m0 = Phi u0, identity flow map, gauge mean = mean(u0).
SimulationState initial_state(const EquationSpec& spec,
                              const GridFunction& u0);

/// One RK4 step of the coupled system dm/dt = rhs_momentum, dgamma/dt =
/// u o gamma (synchronous stages); gamma' is recomputed spectrally after the
/// step and u refreshed from m. Reports a breakdown verdict when a threshold
/// is crossed.
StepResult step(const EquationSpec& spec, const SimulationState& state,
                const IntegratorConfig& cfg);

/// Run the Eulerian backend to t_end or breakdown.
RunResult integrate(const EquationSpec& spec, const GridFunction& u0,
                    const IntegratorConfig& cfg);

/// Acceleration of the flow-map ODE, assembled in conjugated form: with
/// u = gammadot o gamma^{-1},
///   F = [ -Phi^{-1}( u (Phi u)' + lambda u' Phi u - Phi(u u') ) ] o gamma,
/// which equals (du/dt + u u') o gamma along solutions.
GridFunction rhs_lagrangian(const EquationSpec& spec, const FlowMap& gamma,
                            const GridFunction& gammadot,
                            bool do_dealias = true);

/// Run the Lagrangian backend: RK4 on (gamma, gammadot) with gamma(0) = id,
/// gammadot(0) = u0; Eulerian fields are reconstructed on demand as
/// u = gammadot o gamma^{-1}.
RunResult integrate_lagrangian(const EquationSpec& spec,
                               const GridFunction& u0,
                               const IntegratorConfig& cfg);

}  // namespace circleflow
