#pragma once

#include <span>
#include <vector>

#include "circleflow/grid.hpp"

namespace circleflow {

/// An orientation-preserving circle diffeomorphism gamma, stored as the
/// periodic displacement gamma(x) - x at the grid points together with the
/// derivative gamma'(x). Invariants: gamma' > 0 everywhere (violations mean
/// the flow map has degenerated) and the stored derivative agrees with the
/// spectral derivative of the displacement to integration tolerance.
class FlowMap {
 public:
  FlowMap(const Grid& grid, std::vector<double> displacement,
          std::vector<double> derivative);

  static FlowMap identity(const Grid& grid);
  /// Rigid rotation x -> x + a.
  static FlowMap rotation(const Grid& grid, double a);
  /// Derivative computed spectrally from the displacement.
  static FlowMap from_displacement(const Grid& grid,
                                   std::vector<double> displacement);

  const Grid& grid() const { return grid_; }
  std::span<const double> displacement() const { return displacement_; }
  std::span<const double> derivative() const { return derivative_; }

  double min_derivative() const;
  bool orientation_preserving() const { return min_derivative() > 0.0; }

  /// gamma(x_i) = x_i + displacement_i for every grid point.
  std::vector<double> forward_points() const;

 private:
  Grid grid_;
  std::vector<double> displacement_;
  std::vector<double> derivative_;
};

/// Numerical inverse of the circle map, sampled on the grid. Each point is
/// solved by safeguarded Newton iteration (bisection fallback on the
/// bracketing interval) on the monotone lift, to 1e-12 in y; the composition
/// residual gamma(gamma^{-1}(x_i)) - x_i is verified to stay below 1e-10.
/// Throws "not a diffeomorphism" when min gamma' <= 0 and reports the worst
/// residual if Newton fails to converge within 100 iterations.
FlowMap invert_circle_map(const FlowMap& g);

}  // namespace circleflow
