#include "circleflow/grid.hpp"

#include <cmath>

#include "circleflow/errors.hpp"

namespace circleflow {

Grid::Grid(int n) : n_(n) {
  if (n < 8 || n % 2 != 0)
    throw Error("grid size must be even and at least 8, got " +
                std::to_string(n));
}

std::vector<double> Grid::points() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = point(i);
  return x;
}

GridFunction::GridFunction(const Grid& grid)
    : grid_(grid), values_(static_cast<std::size_t>(grid.size()), 0.0) {}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid.size()))
    throw Error("field length does not match grid size");
  if (!finite()) throw Error("non-finite field");
}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values,
                           unchecked_t)
    : grid_(grid), values_(std::move(values)) {}

GridFunction GridFunction::unchecked(const Grid& grid,
                                     std::vector<double> values) {
  return GridFunction(grid, std::move(values), unchecked_t{});
}

bool GridFunction::finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

double mean(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / f.size();
}

}  // namespace circleflow
