#include "circleflow/initial.hpp"

#include <cmath>

#include "circleflow/errors.hpp"

namespace circleflow {

namespace {

GridFunction bandlimited_from(SplitMix64& rng, const Grid& grid, int kmax,
                              double amplitude) {
  if (kmax < 1) throw Error("kmax must be at least 1");
  if (kmax > grid.dealias_cutoff())
    throw Error("kmax exceeds the dealias cutoff n/3");
  std::vector<double> a(static_cast<std::size_t>(kmax) + 1);
  std::vector<double> b(static_cast<std::size_t>(kmax) + 1);
  for (int k = 1; k <= kmax; ++k) {
    a[static_cast<std::size_t>(k)] = amplitude / k * rng.next_symmetric();
    b[static_cast<std::size_t>(k)] = amplitude / k * rng.next_symmetric();
  }
  return GridFunction::sample(grid, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= kmax; ++k)
      s += a[static_cast<std::size_t>(k)] * std::cos(k * x) +
           b[static_cast<std::size_t>(k)] * std::sin(k * x);
    return s;
  });
}

}  // namespace

GridFunction ic_constant(const Grid& grid, double c) {
  return GridFunction::sample(grid, [&](double) { return c; });
}

GridFunction ic_sine(const Grid& grid, double amplitude, int k) {
  return GridFunction::sample(
      grid, [&](double x) { return amplitude * std::sin(k * x); });
}

GridFunction ic_mean_plus_sine(const Grid& grid, double mean, double amplitude,
                               int k) {
  return GridFunction::sample(
      grid, [&](double x) { return mean + amplitude * std::sin(k * x); });
}

GridFunction ic_random_bandlimited(const Grid& grid, std::uint64_t seed,
                                   int kmax, double amplitude) {
  SplitMix64 rng(seed);
  return bandlimited_from(rng, grid, kmax, amplitude);
}

LoopField ic_random_spin(const Grid& grid, std::uint64_t seed, int kmax,
                         double amplitude) {
  SplitMix64 rng(seed);
  std::array<GridFunction, 3> p{bandlimited_from(rng, grid, kmax, amplitude),
                                bandlimited_from(rng, grid, kmax, amplitude),
                                bandlimited_from(rng, grid, kmax, amplitude)};
  LoopField L(grid);
  for (int i = 0; i < grid.size(); ++i) {
    const double vx = p[0][i];
    const double vy = p[1][i];
    const double vz = 1.0 + p[2][i];
    const double nrm = std::sqrt(vx * vx + vy * vy + vz * vz);
    if (nrm < 0.1)
      throw Error("degenerate spin data: perturbation too large");
    L.component(0)[static_cast<std::size_t>(i)] = vx / nrm;
    L.component(1)[static_cast<std::size_t>(i)] = vy / nrm;
    L.component(2)[static_cast<std::size_t>(i)] = vz / nrm;
  }
  return L;
}

}  // namespace circleflow
