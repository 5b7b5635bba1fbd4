#pragma once

#include <cstddef>

// Data-parallel inner-loop kernels: scalar reference implementations plus
// AVX2 variants selected at runtime (cpuid probe, overridable via
// set_backend() or the CIRCLEFLOW_KERNELS environment variable).
//
// Contract: every backend produces bitwise-identical results. Kernels avoid
// FMA contraction and keep per-element operation order fixed; reductions
// only use min/max, which are exact. The equivalence tests assert equality,
// so dispatch never changes simulation output.

namespace circleflow::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);

/// Switch the dispatch table. Returns false (no change) when the requested
/// backend is not available on this host.
bool set_backend(Backend b);

// out[i] = a[i] * b[i]
void mul(double* out, const double* a, const double* b, std::size_t n);

// out[i] = -(u[i]*mx[i]) - lambda*(ux[i]*m[i])
// The quadratic terms of the momentum equation, fused.
void quadratic_terms(double* out, const double* u, const double* mx,
                     const double* ux, const double* m, double lambda,
                     std::size_t n);

// out[i] = y[i] + c*k[i]
void add_scaled(double* out, const double* y, double c, const double* k,
                std::size_t n);

// out[i] = y[i] + (h/6)*(k1[i] + 2*k2[i] + 2*k3[i] + k4[i])
void rk4_combine(double* out, const double* y, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4,
                 std::size_t n);

// z[k] *= s[k] for interleaved complex z (re,im pairs), nk modes.
void apply_real_symbol(double* z, const double* s, std::size_t nk);

// Structure-of-arrays cross product: (ox,oy,oz)[i] = (a x b)[i].
void cross3(double* ox, double* oy, double* oz, const double* ax,
            const double* ay, const double* az, const double* bx,
            const double* by, const double* bz, std::size_t n);

double reduce_min(const double* a, std::size_t n);
double reduce_max(const double* a, std::size_t n);
double reduce_max_abs(const double* a, std::size_t n);
double reduce_max_abs_diff(const double* a, const double* b, std::size_t n);

// Evaluate the trigonometric interpolant given by a normalized half spectrum
// c (interleaved re,im; nk = n/2+1 modes of an n-point real grid) at m
// arbitrary points:
//   f(x) = c_0 + 2*sum_{k=1}^{n/2-1} (Re c_k cos kx - Im c_k sin kx)
//              + Re c_{n/2} cos((n/2) x)
// Cost O(nk) per point via a complex rotation recurrence.
void trig_eval(const double* c, std::size_t nk, const double* x, double* out,
               std::size_t m);

}  // namespace circleflow::kernels
