#include <cmath>

#include "kernels_detail.hpp"

// Reference kernels. The AVX2 variants mirror these element for element; any
// change here must be replicated there to keep the backends bitwise equal.

namespace circleflow::kernels::detail {
namespace {

void mul_scalar(double* out, const double* a, const double* b,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void quadratic_terms_scalar(double* out, const double* u, const double* mx,
                            const double* ux, const double* m, double lambda,
                            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t1 = u[i] * mx[i];
    const double t2 = lambda * (ux[i] * m[i]);
    out[i] = -t1 - t2;
  }
}

void add_scaled_scalar(double* out, const double* y, double c, const double* k,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + c * k[i];
}

void rk4_combine_scalar(double* out, const double* y, double h,
                        const double* k1, const double* k2, const double* k3,
                        const double* k4, std::size_t n) {
  const double w = h / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = ((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i];
    out[i] = y[i] + w * s;
  }
}

void apply_real_symbol_scalar(double* z, const double* s, std::size_t nk) {
  for (std::size_t k = 0; k < nk; ++k) {
    z[2 * k] *= s[k];
    z[2 * k + 1] *= s[k];
  }
}

void cross3_scalar(double* ox, double* oy, double* oz, const double* ax,
                   const double* ay, const double* az, const double* bx,
                   const double* by, const double* bz, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    ox[i] = ay[i] * bz[i] - az[i] * by[i];
    oy[i] = az[i] * bx[i] - ax[i] * bz[i];
    oz[i] = ax[i] * by[i] - ay[i] * bx[i];
  }
}

double reduce_min_scalar(const double* a, std::size_t n) {
  double r = a[0];
  for (std::size_t i = 1; i < n; ++i) r = a[i] < r ? a[i] : r;
  return r;
}

double reduce_max_scalar(const double* a, std::size_t n) {
  double r = a[0];
  for (std::size_t i = 1; i < n; ++i) r = a[i] > r ? a[i] : r;
  return r;
}

double reduce_max_abs_scalar(const double* a, std::size_t n) {
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i]);
    r = v > r ? v : r;
  }
  return r;
}

double reduce_max_abs_diff_scalar(const double* a, const double* b,
                                  std::size_t n) {
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i] - b[i]);
    r = v > r ? v : r;
  }
  return r;
}

void trig_eval_scalar(const double* c, std::size_t nk, const double* x,
                      double* out, std::size_t m) {
  // nk = n/2+1 modes; the last one is the (real) Nyquist coefficient whose
  // interpolant contribution is Re c_{n/2} cos((n/2) x).
  for (std::size_t j = 0; j < m; ++j) {
    const double c1 = std::cos(x[j]);
    const double s1 = std::sin(x[j]);
    double cr = c1;  // running cos(k x), sin(k x), starting at k = 1
    double ci = s1;
    double acc = c[0];
    for (std::size_t k = 1; k + 1 < nk; ++k) {
      const double re2 = 2.0 * c[2 * k];
      const double im2 = 2.0 * c[2 * k + 1];
      acc += re2 * cr - im2 * ci;
      const double nr = cr * c1 - ci * s1;
      const double ni = cr * s1 + ci * c1;
      cr = nr;
      ci = ni;
    }
    if (nk > 1) acc += c[2 * (nk - 1)] * cr;
    out[j] = acc;
  }
}

constexpr KernelTable kScalarTable = {
    mul_scalar,           quadratic_terms_scalar,
    add_scaled_scalar,    rk4_combine_scalar,
    apply_real_symbol_scalar, cross3_scalar,
    reduce_min_scalar,    reduce_max_scalar,
    reduce_max_abs_scalar, reduce_max_abs_diff_scalar,
    trig_eval_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

}  // namespace circleflow::kernels::detail
