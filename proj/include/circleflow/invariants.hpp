#pragma once

#include <array>
#include <string>
#include <vector>

#include "circleflow/equations.hpp"
#include "circleflow/flow_map.hpp"

namespace circleflow {

/// Per-record diagnostics: the lambda-density orbit invariant drift, Kelvin
/// quantities for the basis xi0 in {1, sin x, cos x}, integral/norm monitors,
/// and the blowup indicators of the breakdown policy.
struct DiagnosticsRecord {
  double t = 0.0;
  double orbit_drift = 0.0;
  std::array<double, 3> kelvin{};
  double momentum_integral = 0.0;
  double energy = 0.0;
  double mean_u = 0.0;
  double min_phi_u = 0.0;
  double min_ux = 0.0;
  double c1_norm = 0.0;
  double gamma_min_deriv = 0.0;
};

class DiagnosticsSeries {
 public:
  explicit DiagnosticsSeries(EquationSpec spec) : spec_(std::move(spec)) {}

  const EquationSpec& spec() const { return spec_; }
  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }

  /// Appends a record; times must be strictly increasing.
  void append(const DiagnosticsRecord& r);

 private:
  EquationSpec spec_;
  std::vector<DiagnosticsRecord> records_;
};

/// The conserved field (m o gamma) * (gamma')^lambda, evaluated pointwise on
/// the grid. Along exact solutions it equals the initial momentum for all
/// time; its discrete drift measures solver fidelity.
GridFunction orbit_invariant(const EquationSpec& spec, const GridFunction& m,
                             const FlowMap& flow);

/// Kelvin quantity I = integral of m * (xi0 o gamma^{-1}) * (gamma' o
/// gamma^{-1}) dx by spectral quadrature. Conserved in the coadjoint case
/// lambda = 2; for other lambda the generalized invariant is carried by
/// orbit_invariant instead.
double kelvin_quantity(const EquationSpec& spec, const GridFunction& m,
                       const FlowMap& flow, const GridFunction& xi0);

/// Kelvin quantities for xi0 = 1, sin x, cos x sharing one map inversion.
std::array<double, 3> kelvin_basis_quantities(const EquationSpec& spec,
                                              const GridFunction& m,
                                              const FlowMap& flow);

/// integral of m dx (= 2*pi * grid mean); conserved for every member of the
/// family.
double momentum_integral(const GridFunction& m);

/// (1/2) * integral of u * Phi u dx; conserved exactly when lambda = 2.
double energy(const EquationSpec& spec, const GridFunction& u);

/// max|u| + max|u'| on the grid.
double c1_norm(const GridFunction& u);

double min_field(const GridFunction& f);

struct SignCondition {
  bool holds = false;
  double min_value = 0.0;
};

/// The global-existence hypothesis: does Phi u0 >= 0 hold on the grid
/// (up to a 1e-12 relative floor)?
SignCondition sign_condition(const EquationSpec& spec, const GridFunction& u0);

/// Full diagnostics at one instant; m0 is the initial momentum the orbit
/// invariant is compared against.
DiagnosticsRecord evaluate_record(const EquationSpec& spec, double t,
                                  const GridFunction& u, const GridFunction& m,
                                  const FlowMap& flow, const GridFunction& m0);

struct DriftEntry {
  std::string invariant;
  double max_drift = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct DriftSummary {
  std::vector<DriftEntry> entries;
  bool all_pass = false;
  /// Last record time with orbit drift below 1e-4; classical-solution
  /// semantics end at breaking, so drifts are evaluated up to here.
  double reliable_horizon = 0.0;
};

/// Max relative drift per known invariant of the preset, with pass/fail
/// against the module tolerances, evaluated over records up to the reliable
/// horizon.
DriftSummary drift_report(const DiagnosticsSeries& series);

}  // namespace circleflow
