#include "circleflow/equations.hpp"

#include <cmath>
#include <cstdio>

#include "circleflow/errors.hpp"

namespace circleflow {

namespace {

constexpr const char* kValidPresets =
    "burgers, ch, much, dp, mudp, hs, muburgers, sobolev(r,lambda)";

const char* kSignNote =
    "global existence: classical solutions persist for all time when the "
    "initial momentum satisfies Phi u0 >= 0 (argument established for the "
    "polynomial operators with r >= 1 and for the mu operator with "
    "lambda > 0)";

CatalogEntry make_entry(std::string name, InertiaOperator phi, double lambda,
                        Gauge gauge, bool homogeneous, std::string reference,
                        std::string notes) {
  EquationSpec spec{std::move(name), phi, lambda, gauge, homogeneous};
  CatalogEntry e{spec, std::move(reference), known_invariants_for(spec),
                 std::move(notes)};
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> v;
  v.push_back(make_entry("burgers", InertiaOperator::sobolev(0), 2.0,
                         Gauge::none, false,
                         "inviscid Burgers equation u_t = -3 u u_x (L2 "
                         "geodesic flow on the circle diffeomorphisms)",
                         ""));
  v.push_back(make_entry("ch", InertiaOperator::sobolev(1), 2.0, Gauge::none,
                         false, "Camassa-Holm equation (Camassa & Holm 1993)",
                         kSignNote));
  v.push_back(make_entry("much", InertiaOperator::mu_minus_dxx(), 2.0,
                         Gauge::none, false,
                         "muCH / muHS equation (Khesin, Lenells & Misiolek "
                         "2008)",
                         kSignNote));
  v.push_back(make_entry("dp", InertiaOperator::sobolev(1), 3.0, Gauge::none,
                         false,
                         "Degasperis-Procesi equation (Degasperis & Procesi "
                         "1999)",
                         kSignNote));
  v.push_back(make_entry("mudp", InertiaOperator::mu_minus_dxx(), 3.0,
                         Gauge::none, false,
                         "muDP equation (integrable companion of muCH in the "
                         "tensor-density family; Lax pair and bihamiltonian "
                         "structure)",
                         kSignNote));
  v.push_back(make_entry("hs", InertiaOperator::minus_dxx(), 2.0,
                         Gauge::fixed_mean, true,
                         "Hunter-Saxton equation (Hunter & Saxton 1991); "
                         "coset flow on the homogeneous space of circle "
                         "diffeomorphisms modulo rigid rotations",
                         ""));
  v.push_back(make_entry("muburgers", InertiaOperator::minus_dxx(), 3.0,
                         Gauge::fixed_mean, true,
                         "muBurgers equation (lambda = 3 coset flow with the "
                         "Hunter-Saxton Lagrangian); in the fixed-mean gauge "
                         "it reduces to u_t + u u_x = 0 pointwise",
                         ""));
  return v;
}

}  // namespace

void validate(const EquationSpec& spec) {
  if (!std::isfinite(spec.lambda)) throw Error("lambda must be finite");
  const bool singular =
      spec.phi.kind() == InertiaOperator::Kind::minus_dxx;
  if (spec.homogeneous != singular)
    throw Error("homogeneous presets are exactly those with the singular "
                "operator minus_dxx");
  if (spec.homogeneous && spec.gauge != Gauge::fixed_mean)
    throw Error("homogeneous presets require the fixed-mean gauge");
}

std::vector<std::string> known_invariants_for(const EquationSpec& spec) {
  std::vector<std::string> inv{"orbit", "momentum"};
  if (spec.coadjoint()) {
    inv.push_back("energy");
    inv.push_back("kelvin");
  }
  if (spec.phi.kind() == InertiaOperator::Kind::mu_minus_dxx ||
      spec.gauge == Gauge::fixed_mean)
    inv.push_back("mean_u");
  return inv;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

CatalogEntry sobolev_preset(int r, double lambda) {
  if (r < 0) throw Error("sobolev order must be non-negative");
  if (!std::isfinite(lambda)) throw Error("lambda must be finite");
  char name[64];
  std::snprintf(name, sizeof(name), "sobolev(%d,%g)", r, lambda);
  return make_entry(name, InertiaOperator::sobolev(r), lambda, Gauge::none,
                    false, "H^r family on the circle", kSignNote);
}

CatalogEntry preset(std::string_view name) {
  for (const auto& e : catalog())
    if (e.spec.name == name) return e;
  if (name.rfind("sobolev(", 0) == 0 && name.back() == ')') {
    int r = -1;
    double lambda = 0.0;
    const std::string body(name.substr(8, name.size() - 9));
    if (std::sscanf(body.c_str(), "%d ,%lf", &r, &lambda) == 2)
      return sobolev_preset(r, lambda);
    throw Error("could not parse '" + std::string(name) +
                "'; expected sobolev(r,lambda)");
  }
  throw Error("unknown preset '" + std::string(name) +
              "'; valid presets: " + kValidPresets);
}

GridFunction momentum(const EquationSpec& spec, const GridFunction& u) {
  return apply_phi(spec.phi, u);
}

GridFunction velocity(const EquationSpec& spec, const GridFunction& m,
                      double gauge_mean) {
  if (spec.gauge == Gauge::fixed_mean)
    return invert_phi(spec.phi, m, gauge_mean);
  // Mean determined by the momentum itself.
  return invert_phi(spec.phi, m, mean(m) / spec.phi.symbol(0));
}

}  // namespace circleflow
