#pragma once

#include <span>
#include <vector>

namespace circleflow {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on [0, 2*pi): x_i = 2*pi*i/n.
/// n must be even and >= 8 so the 2/3 dealiasing cutoff is well defined.
class Grid {
 public:
  explicit Grid(int n);

  int size() const { return n_; }
  double spacing() const { return kTwoPi / n_; }
  double point(int i) const { return spacing() * i; }
  std::vector<double> points() const;

  int nyquist() const { return n_ / 2; }
  /// Largest wavenumber kept by the 2/3 rule.
  int dealias_cutoff() const { return n_ / 3; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
};

/// Real scalar field sampled on a Grid. Construction from user data rejects
/// non-finite values; the integrator's internal stage arithmetic uses the
/// unchecked factory and re-checks finiteness once per step.
class GridFunction {
 public:
  explicit GridFunction(const Grid& grid);
  GridFunction(const Grid& grid, std::vector<double> values);

  static GridFunction unchecked(const Grid& grid, std::vector<double> values);

  template <typename F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) v[i] = f(grid.point(i));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }

  bool finite() const;

 private:
  struct unchecked_t {};
  GridFunction(const Grid& grid, std::vector<double> values, unchecked_t);

  Grid grid_;
  std::vector<double> values_;
};

/// Grid mean (1/n) * sum of samples; spectrally exact quadrature of the
/// normalized integral on the periodic grid. The integral over the circle is
/// 2*pi times this value.
double mean(const GridFunction& f);

}  // namespace circleflow
