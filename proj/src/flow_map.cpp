#include "circleflow/flow_map.hpp"

#include <algorithm>
#include <cmath>

#include "circleflow/errors.hpp"
#include "circleflow/kernels.hpp"
#include "circleflow/spectral.hpp"

namespace circleflow {

FlowMap::FlowMap(const Grid& grid, std::vector<double> displacement,
                 std::vector<double> derivative)
    : grid_(grid),
      displacement_(std::move(displacement)),
      derivative_(std::move(derivative)) {
  const auto n = static_cast<std::size_t>(grid.size());
  if (displacement_.size() != n || derivative_.size() != n)
    throw Error("flow map field length does not match grid size");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(displacement_[i]) || !std::isfinite(derivative_[i]))
      throw Error("non-finite flow map");
}

FlowMap FlowMap::identity(const Grid& grid) {
  const auto n = static_cast<std::size_t>(grid.size());
  return FlowMap(grid, std::vector<double>(n, 0.0),
                 std::vector<double>(n, 1.0));
}

FlowMap FlowMap::rotation(const Grid& grid, double a) {
  const auto n = static_cast<std::size_t>(grid.size());
  return FlowMap(grid, std::vector<double>(n, a), std::vector<double>(n, 1.0));
}

FlowMap FlowMap::from_displacement(const Grid& grid,
                                   std::vector<double> displacement) {
  GridFunction d(grid, displacement);
  GridFunction dx = deriv(d, 1);
  std::vector<double> gp(dx.values().begin(), dx.values().end());
  for (double& v : gp) v += 1.0;
  return FlowMap(grid, std::move(displacement), std::move(gp));
}

double FlowMap::min_derivative() const {
  return kernels::reduce_min(derivative_.data(), derivative_.size());
}

std::vector<double> FlowMap::forward_points() const {
  std::vector<double> p(displacement_.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = grid_.point(static_cast<int>(i)) + displacement_[i];
  return p;
}

FlowMap invert_circle_map(const FlowMap& g) {
  if (g.min_derivative() <= 0.0) throw Error("not a diffeomorphism");

  const Grid& grid = g.grid();
  const int n = grid.size();
  const GridFunction disp(grid, std::vector<double>(g.displacement().begin(),
                                                    g.displacement().end()));
  const GridFunction dgamma(grid, std::vector<double>(g.derivative().begin(),
                                                      g.derivative().end()));
  const Interpolant d_at(disp);
  const Interpolant dp_at(dgamma);

  const double dmin =
      kernels::reduce_min(g.displacement().data(), g.displacement().size());
  const double dmax =
      kernels::reduce_max(g.displacement().data(), g.displacement().size());
  // Interpolant range can slightly exceed the sample range.
  const double slack = 1e-2 * (1.0 + (dmax - dmin));

  constexpr int kMaxIter = 100;
  constexpr double kYTol = 1e-12;

  std::vector<double> disp_inv(static_cast<std::size_t>(n));
  std::vector<double> deriv_inv(static_cast<std::size_t>(n));
  double worst_residual = 0.0;

  for (int i = 0; i < n; ++i) {
    const double x = grid.point(i);
    // Bracket for the monotone lift y + d(y) = x.
    double lo = x - dmax - slack;
    double hi = x - dmin + slack;
    double y = x - g.displacement()[static_cast<std::size_t>(i)];
    y = std::clamp(y, lo, hi);

    double r = y + d_at(y) - x;
    bool converged = false;
    for (int it = 0; it < kMaxIter; ++it) {
      if (r > 0.0)
        hi = std::min(hi, y);
      else
        lo = std::max(lo, y);

      const double gp = dp_at(y);
      double ynew = gp > 0.0 ? y - r / gp : 0.5 * (lo + hi);
      if (!(ynew > lo && ynew < hi)) ynew = 0.5 * (lo + hi);

      const double dy = ynew - y;
      y = ynew;
      r = y + d_at(y) - x;
      if (std::abs(dy) <= kYTol || std::abs(r) <= 1e-14) {
        converged = true;
        break;
      }
    }
    if (!converged && std::abs(r) > 1e-11)
      throw Error("circle map inversion did not converge; worst residual " +
                  std::to_string(std::abs(r)));

    worst_residual = std::max(worst_residual, std::abs(r));
    disp_inv[static_cast<std::size_t>(i)] = y - x;
    deriv_inv[static_cast<std::size_t>(i)] = 1.0 / dp_at(y);
  }

  if (worst_residual > 1e-10)
    throw Error("circle map inversion composition residual " +
                std::to_string(worst_residual) + " exceeds 1e-10");

  return FlowMap(grid, std::move(disp_inv), std::move(deriv_inv));
}

}  // namespace circleflow
