#pragma once

#include <array>
#include <vector>

#include "circleflow/evolution.hpp"
#include "circleflow/grid.hpp"

namespace circleflow {

/// An R^3-valued loop on the circle (structure of arrays), the state of the
/// Landau-Lifschitz equation dL/dt = L x L''. For spin-sphere data the
/// pointwise norm |L(x)| is constant in x; assert_unit_norm checks that at
/// construction when the caller claims it.
class LoopField {
 public:
  explicit LoopField(const Grid& grid);
  LoopField(const Grid& grid, std::array<std::vector<double>, 3> components);

  template <typename F>
  static LoopField sample(const Grid& grid, F&& f) {
    LoopField L(grid);
    for (int i = 0; i < grid.size(); ++i) {
      const std::array<double, 3> v = f(grid.point(i));
      for (int c = 0; c < 3; ++c)
        L.component(c)[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(c)];
    }
    return L;
  }

  const Grid& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  std::vector<double>& component(int c) { return comp_[static_cast<std::size_t>(c)]; }
  const std::vector<double>& component(int c) const {
    return comp_[static_cast<std::size_t>(c)];
  }

  double norm_at(int i) const;
  bool finite() const;
  /// Throws unless |L(x_i)| == 1 within tol everywhere.
  void assert_unit_norm(double tol = 1e-12) const;

 private:
  Grid grid_;
  std::array<std::vector<double>, 3> comp_;
};

/// dL/dt = L x L'': componentwise spectral second derivative, pointwise
/// cross product, dealiased.
LoopField rhs_ll(const LoopField& L);

/// Spin-wave solution with polar angle theta and wavenumber k:
///   L = (sin t. cos(kx + w t), sin t. sin(kx + w t), cos t.),  w = -k^2 cos t.
LoopField spin_wave(const Grid& grid, double theta, int k, double t = 0.0);

/// (1/2) * integral of |L'|^2 dx.
double ll_energy(const LoopField& L);
/// integral of L dx, componentwise.
std::array<double, 3> ll_mean_vector(const LoopField& L);
/// max_x | |L(x)| - |L0(x)| |.
double ll_norm_deviation(const LoopField& L, const LoopField& L0);

struct LLRecord {
  double t = 0.0;
  double norm_drift = 0.0;  // max pointwise |L| deviation from t = 0
  double energy = 0.0;
  std::array<double, 3> mean_vector{};
};

struct LLResult {
  std::vector<double> times;          // trajectory timestamps
  std::vector<LoopField> trajectory;  // snapshots at record cadence
  std::vector<LLRecord> records;
  Verdict verdict;
};

/// RK4 integration of dL/dt = L x L''; breakdown on non-finite values.
/// Records norm deviation, energy and mean vector every record_every steps.
LLResult integrate_ll(const LoopField& L0, const IntegratorConfig& cfg);

}  // namespace circleflow
