#pragma once

#include <span>
#include <vector>

#include "circleflow/grid.hpp"

namespace circleflow {

/// Spectral derivative: Fourier multiplication by (ik)^order, order in [1,4].
/// Exact for band-limited input; the Nyquist mode is zeroed for odd orders.
/// Throws "non-finite field" on non-finite input.
GridFunction deriv(const GridFunction& f, int order);

/// 2/3-rule dealiasing: zero every mode with |k| > n/3.
GridFunction dealias(const GridFunction& f);

/// Trigonometric interpolant of a grid function, exact on band-limited data
/// and equal to the stored samples at grid points (to rounding). Points are
/// taken mod 2*pi.
class Interpolant {
 public:
  explicit Interpolant(const GridFunction& f);

  double operator()(double x) const;
  void eval(std::span<const double> x, std::span<double> out) const;
  std::vector<double> eval(std::span<const double> x) const;

 private:
  std::vector<double> coeff_;  // interleaved re,im half spectrum
  int n_;
};

/// One-shot interpolation of f at the given targets.
std::vector<double> interp(const GridFunction& f,
                           std::span<const double> targets);
double interp_at(const GridFunction& f, double x);

}  // namespace circleflow
