#include "circleflow/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "circleflow/errors.hpp"
#include "circleflow/kernels.hpp"
#include "circleflow/spectral.hpp"

namespace circleflow {

namespace {

// (gamma')^lambda with gamma' > 0; exact repeated products for the small
// integer weights of the catalog.
double pow_weight(double g, double lambda) {
  const double r = std::round(lambda);
  if (r == lambda && r >= 0.0 && r <= 8.0) {
    double p = 1.0;
    for (int i = 0; i < static_cast<int>(r); ++i) p *= g;
    return p;
  }
  return std::pow(g, lambda);
}

double rel_drift(double v, double v0) {
  return std::abs(v - v0) / (1.0 + std::abs(v0));
}

}  // namespace

void DiagnosticsSeries::append(const DiagnosticsRecord& r) {
  if (!records_.empty() && r.t <= records_.back().t)
    throw Error("diagnostics records must have strictly increasing times");
  records_.push_back(r);
}

GridFunction orbit_invariant(const EquationSpec& spec, const GridFunction& m,
                             const FlowMap& flow) {
  if (!flow.orientation_preserving()) throw Error("flow map degenerate");
  std::vector<double> vals = Interpolant(m).eval(flow.forward_points());
  const auto gp = flow.derivative();
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] *= pow_weight(gp[i], spec.lambda);
  return GridFunction::unchecked(m.grid(), std::move(vals));
}

double kelvin_quantity(const EquationSpec& spec, const GridFunction& m,
                       const FlowMap& flow, const GridFunction& xi0) {
  (void)spec;
  if (!flow.orientation_preserving()) throw Error("flow map degenerate");
  const FlowMap inv = invert_circle_map(flow);
  // Ad_gamma xi0 = (xi0 o gamma^{-1}) * (gamma' o gamma^{-1}); the latter is
  // the reciprocal of the inverse map's derivative.
  std::vector<double> ad = Interpolant(xi0).eval(inv.forward_points());
  const auto dinv = inv.derivative();
  double acc = 0.0;
  for (std::size_t i = 0; i < ad.size(); ++i)
    acc += m.values()[i] * ad[i] / dinv[i];
  return kTwoPi * acc / static_cast<double>(ad.size());
}

std::array<double, 3> kelvin_basis_quantities(const EquationSpec& spec,
                                              const GridFunction& m,
                                              const FlowMap& flow) {
  (void)spec;
  if (!flow.orientation_preserving()) throw Error("flow map degenerate");
  const FlowMap inv = invert_circle_map(flow);
  const auto pts = inv.forward_points();
  const auto dinv = inv.derivative();
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double w = m.values()[i] / dinv[i];
    acc[0] += w;
    acc[1] += w * std::sin(pts[i]);
    acc[2] += w * std::cos(pts[i]);
  }
  const double scale = kTwoPi / static_cast<double>(pts.size());
  return {acc[0] * scale, acc[1] * scale, acc[2] * scale};
}

double momentum_integral(const GridFunction& m) { return kTwoPi * mean(m); }

double energy(const EquationSpec& spec, const GridFunction& u) {
  const GridFunction m = apply_phi(spec.phi, u);
  double acc = 0.0;
  for (int i = 0; i < u.size(); ++i) acc += u[i] * m[i];
  return 0.5 * kTwoPi * acc / u.size();
}

double c1_norm(const GridFunction& u) {
  const GridFunction ux = deriv(u, 1);
  return kernels::reduce_max_abs(u.values().data(), u.values().size()) +
         kernels::reduce_max_abs(ux.values().data(), ux.values().size());
}

double min_field(const GridFunction& f) {
  return kernels::reduce_min(f.values().data(), f.values().size());
}

SignCondition sign_condition(const EquationSpec& spec,
                             const GridFunction& u0) {
  const GridFunction m0 = apply_phi(spec.phi, u0);
  const double mn = min_field(m0);
  const double scale =
      kernels::reduce_max_abs(m0.values().data(), m0.values().size());
  return {mn >= -1e-12 * scale, mn};
}

DiagnosticsRecord evaluate_record(const EquationSpec& spec, double t,
                                  const GridFunction& u, const GridFunction& m,
                                  const FlowMap& flow,
                                  const GridFunction& m0) {
  DiagnosticsRecord r;
  r.t = t;

  const GridFunction orb = orbit_invariant(spec, m, flow);
  const double scale =
      kernels::reduce_max_abs(m0.values().data(), m0.values().size());
  const double dev = kernels::reduce_max_abs_diff(
      orb.values().data(), m0.values().data(), orb.values().size());
  r.orbit_drift = scale > 0.0 ? dev / scale : dev;

  r.kelvin = kelvin_basis_quantities(spec, m, flow);
  r.momentum_integral = momentum_integral(m);
  r.energy = energy(spec, u);
  r.mean_u = mean(u);
  r.min_phi_u = min_field(m);
  const GridFunction ux = deriv(u, 1);
  r.min_ux = min_field(ux);
  r.c1_norm =
      kernels::reduce_max_abs(u.values().data(), u.values().size()) +
      kernels::reduce_max_abs(ux.values().data(), ux.values().size());
  r.gamma_min_deriv = flow.min_derivative();
  return r;
}

DriftSummary drift_report(const DiagnosticsSeries& series) {
  if (series.empty()) throw Error("drift report requires a nonempty series");
  const auto& recs = series.records();
  const auto& spec = series.spec();

  DriftSummary out;
  out.reliable_horizon = recs.front().t;
  for (const auto& r : recs)
    if (r.orbit_drift < 1e-4) out.reliable_horizon = r.t;

  const auto& first = recs.front();
  std::vector<DiagnosticsRecord> window;
  for (const auto& r : recs)
    if (r.t <= out.reliable_horizon) window.push_back(r);

  for (const std::string& inv : known_invariants_for(spec)) {
    DriftEntry e;
    e.invariant = inv;
    if (inv == "orbit") {
      e.tolerance = 1e-5;
      for (const auto& r : window)
        e.max_drift = std::max(e.max_drift, r.orbit_drift);
    } else if (inv == "momentum") {
      e.tolerance = 1e-10;
      for (const auto& r : window)
        e.max_drift = std::max(
            e.max_drift, rel_drift(r.momentum_integral,
                                   first.momentum_integral));
    } else if (inv == "energy") {
      e.tolerance = 1e-8;
      for (const auto& r : window)
        e.max_drift = std::max(e.max_drift, rel_drift(r.energy, first.energy));
    } else if (inv == "mean_u") {
      e.tolerance = spec.gauge == Gauge::fixed_mean ? 1e-12 : 1e-10;
      for (const auto& r : window)
        e.max_drift = std::max(e.max_drift, std::abs(r.mean_u - first.mean_u));
    } else if (inv == "kelvin") {
      e.tolerance = 1e-8;
      for (const auto& r : window)
        for (int j = 0; j < 3; ++j)
          e.max_drift =
              std::max(e.max_drift, rel_drift(r.kelvin[static_cast<std::size_t>(j)],
                                              first.kelvin[static_cast<std::size_t>(j)]));
    }
    e.pass = e.max_drift <= e.tolerance;
    out.entries.push_back(e);
  }

  out.all_pass = std::all_of(out.entries.begin(), out.entries.end(),
                             [](const DriftEntry& e) { return e.pass; });
  return out;
}

}  // namespace circleflow
