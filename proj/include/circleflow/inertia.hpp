#pragma once

#include <string>

#include "circleflow/grid.hpp"

namespace circleflow {

/// The inertia operator Phi, a Fourier multiplier p(k) on integer
/// wavenumbers:
///   sobolev(r):   Phi = sum_{j=0}^r (-1)^j d^{2j},  p(k) = sum_{j=0}^r k^{2j}
///   mu_minus_dxx: Phi = mu - d^2 in the grid-mean convention,
///                 p(0) = 1, p(k) = k^2 otherwise
///   minus_dxx:    Phi = -d^2, p(0) = 0 (singular on constants), p(k) = k^2
///
/// sobolev(0) is the identity. The mean convention: wherever the classical
/// mu(u) = integral of u appears, this library uses the grid mean (the
/// 2*pi normalization is folded into the symbol, making Phi exactly
/// diagonal).
class InertiaOperator {
 public:
  enum class Kind { sobolev_poly, mu_minus_dxx, minus_dxx };

  static InertiaOperator sobolev(int r);
  static InertiaOperator mu_minus_dxx() {
    return InertiaOperator(Kind::mu_minus_dxx, 1);
  }
  static InertiaOperator minus_dxx() {
    return InertiaOperator(Kind::minus_dxx, 1);
  }

  Kind kind() const { return kind_; }
  /// r for sobolev operators; 1 for the second-order mu/minus variants.
  int order() const { return r_; }
  double symbol(int k) const;
  /// False only for minus_dxx, whose symbol vanishes on the constant mode;
  /// inverting it requires an explicit gauge argument.
  bool invertible() const { return kind_ != Kind::minus_dxx; }
  std::string name() const;

  friend bool operator==(const InertiaOperator&,
                         const InertiaOperator&) = default;

 private:
  InertiaOperator(Kind kind, int r) : kind_(kind), r_(r) {}

  Kind kind_;
  int r_;
};

/// m = Phi u (Fourier multiplication by the symbol).
GridFunction apply_phi(const InertiaOperator& op, const GridFunction& u);

/// u = Phi^{-1} m. Nonzero modes are divided by p(k); the mean of the result
/// is set to gauge_mean. For invertible operators gauge_mean is
/// consistency-checked against the mean implied by m; for minus_dxx the
/// momentum must be relatively mean-free (|mean(m)| <= 1e-8 * max|m|) and
/// gauge_mean is a genuine gauge choice.
GridFunction invert_phi(const InertiaOperator& op, const GridFunction& m,
                        double gauge_mean);

}  // namespace circleflow
