#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "circleflow/grid.hpp"
#include "circleflow/inertia.hpp"

namespace circleflow {

enum class Gauge { none, fixed_mean };

/// One member of the momentum-transport family
///   dm/dt = -u m' - lambda u' m,   m = Phi u
/// on the circle: the inertia operator, the density weight lambda, and the
/// gauge convention. Homogeneous presets (hs, muburgers) evolve cosets under
/// rigid rotations; the fixed-mean gauge picks the representative whose
/// velocity mean stays equal to its initial value.
struct EquationSpec {
  std::string name;
  InertiaOperator phi = InertiaOperator::sobolev(1);
  double lambda = 2.0;
  Gauge gauge = Gauge::none;
  bool homogeneous = false;

  bool coadjoint() const { return lambda == 2.0; }
};

/// Throws unless the spec is internally consistent: lambda finite,
/// homogeneous exactly when phi is minus_dxx, and homogeneous implies the
/// fixed-mean gauge.
void validate(const EquationSpec& spec);

struct CatalogEntry {
  EquationSpec spec;
  std::string reference;  // literature anchor for the equation
  /// Conserved quantities this preset must maintain at runtime; subset of
  /// {"orbit", "momentum", "energy", "mean_u", "kelvin"}.
  std::vector<std::string> known_invariants;
  std::string notes;  // e.g. the global-existence hypothesis
};

/// Invariant identifiers applicable to a spec: orbit and momentum always,
/// energy and kelvin exactly for lambda = 2, mean_u for the mu-type operator
/// or the fixed-mean gauge.
std::vector<std::string> known_invariants_for(const EquationSpec& spec);

/// Named presets: burgers, ch, much, dp, mudp, hs, muburgers, and the generic
/// family "sobolev(r,lambda)". Unknown names throw with the list of valid
/// presets.
CatalogEntry preset(std::string_view name);
CatalogEntry sobolev_preset(int r, double lambda);

/// All named scalar-family presets in stable order. (landau_lifschitz has its
/// own state type and module; the CLI catalog merges both.)
const std::vector<CatalogEntry>& catalog();

/// m = Phi u.
GridFunction momentum(const EquationSpec& spec, const GridFunction& u);

/// u = Phi^{-1} m with the spec's gauge. Fixed-mean presets use gauge_mean
/// (the conserved initial velocity mean); for invertible operators the mean
/// is determined by m itself and gauge_mean is ignored.
GridFunction velocity(const EquationSpec& spec, const GridFunction& m,
                      double gauge_mean);

}  // namespace circleflow
