#pragma once

#include <cstdint>

#include "circleflow/grid.hpp"
#include "circleflow/landau.hpp"

namespace circleflow {

/// splitmix64: the documented PRNG behind the random initial-condition
/// presets. State update and output are bit-exact (see the README), so
/// seeded data is reproducible across platforms and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

 private:
  std::uint64_t state_;
};

GridFunction ic_constant(const Grid& grid, double c);
GridFunction ic_sine(const Grid& grid, double amplitude, int k);
GridFunction ic_mean_plus_sine(const Grid& grid, double mean, double amplitude,
                               int k);

/// sum_{k=1}^{kmax} (amplitude/k) * (a_k cos kx + b_k sin kx) with a_k, b_k
/// drawn in that order from SplitMix64(seed) as symmetric uniforms.
/// kmax must not exceed the dealias cutoff n/3.
GridFunction ic_random_bandlimited(const Grid& grid, std::uint64_t seed,
                                   int kmax, double amplitude);

/// Pointwise-normalized perturbation of the north pole: V = (px, py, 1 + pz)
/// with px, py, pz drawn componentwise as ic_random_bandlimited fields from
/// one generator (x first, then y, then z), L = V/|V|.
LoopField ic_random_spin(const Grid& grid, std::uint64_t seed, int kmax,
                         double amplitude);

}  // namespace circleflow
