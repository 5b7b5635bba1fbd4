#pragma once

#include "circleflow/kernels.hpp"

// Internal dispatch machinery shared by the backend translation units.

namespace circleflow::kernels::detail {

struct KernelTable {
  void (*mul)(double*, const double*, const double*, std::size_t);
  void (*quadratic_terms)(double*, const double*, const double*, const double*,
                          const double*, double, std::size_t);
  void (*add_scaled)(double*, const double*, double, const double*,
                     std::size_t);
  void (*rk4_combine)(double*, const double*, double, const double*,
                      const double*, const double*, const double*,
                      std::size_t);
  void (*apply_real_symbol)(double*, const double*, std::size_t);
  void (*cross3)(double*, double*, double*, const double*, const double*,
                 const double*, const double*, const double*, const double*,
                 std::size_t);
  double (*reduce_min)(const double*, std::size_t);
  double (*reduce_max)(const double*, std::size_t);
  double (*reduce_max_abs)(const double*, std::size_t);
  double (*reduce_max_abs_diff)(const double*, const double*, std::size_t);
  void (*trig_eval)(const double*, std::size_t, const double*, double*,
                    std::size_t);
};

const KernelTable& scalar_table();

// Null when this build or host has no AVX2 path.
const KernelTable* avx2_table();

}  // namespace circleflow::kernels::detail
