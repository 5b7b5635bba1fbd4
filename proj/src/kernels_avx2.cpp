#include "kernels_detail.hpp"

// AVX2 variants. Element-for-element the same operation order as the scalar
// reference (no FMA), so results are bitwise identical; kernels assume finite
// inputs. Compiled with -mavx2 on x86-64 only and reached solely through the
// runtime dispatch in kernels.cpp.

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace circleflow::kernels::detail {
namespace {

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_min_pd(lo, hi);
  __m128d s = _mm_unpackhi_pd(m, m);
  return _mm_cvtsd_f64(_mm_min_sd(m, s));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_max_pd(lo, hi);
  __m128d s = _mm_unpackhi_pd(m, m);
  return _mm_cvtsd_f64(_mm_max_sd(m, s));
}

inline __m256d vabs(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

void mul_avx2(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void quadratic_terms_avx2(double* out, const double* u, const double* mx,
                          const double* ux, const double* m, double lambda,
                          std::size_t n) {
  const __m256d vl = _mm256_set1_pd(lambda);
  // Sign-bit negation, not 0 - x, so signed zeros match the scalar path.
  const __m256d sign = _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000ULL));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t1 = _mm256_mul_pd(_mm256_loadu_pd(u + i),
                                     _mm256_loadu_pd(mx + i));
    const __m256d t2 = _mm256_mul_pd(
        vl, _mm256_mul_pd(_mm256_loadu_pd(ux + i), _mm256_loadu_pd(m + i)));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_xor_pd(t1, sign), t2));
  }
  for (; i < n; ++i) {
    const double t1 = u[i] * mx[i];
    const double t2 = lambda * (ux[i] * m[i]);
    out[i] = -t1 - t2;
  }
}

void add_scaled_avx2(double* out, const double* y, double c, const double* k,
                     std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        out + i, _mm256_add_pd(_mm256_loadu_pd(y + i),
                               _mm256_mul_pd(vc, _mm256_loadu_pd(k + i))));
  }
  for (; i < n; ++i) out[i] = y[i] + c * k[i];
}

void rk4_combine_avx2(double* out, const double* y, double h, const double* k1,
                      const double* k2, const double* k3, const double* k4,
                      std::size_t n) {
  const double w = h / 6.0;
  const __m256d vw = _mm256_set1_pd(w);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1 + i),
                              _mm256_mul_pd(two, _mm256_loadu_pd(k2 + i)));
    s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(k3 + i)));
    s = _mm256_add_pd(s, _mm256_loadu_pd(k4 + i));
    _mm256_storeu_pd(out + i,
                     _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(vw, s)));
  }
  for (; i < n; ++i) {
    const double s = ((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i];
    out[i] = y[i] + w * s;
  }
}

void apply_real_symbol_avx2(double* z, const double* s, std::size_t nk) {
  // Interleaved complex: duplicate each symbol entry across re and im.
  std::size_t k = 0;
  for (; k + 2 <= nk; k += 2) {
    const __m128d sk = _mm_loadu_pd(s + k);
    const __m256d sv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(sk),
                                             0b01010000);  // s0 s0 s1 s1
    _mm256_storeu_pd(z + 2 * k, _mm256_mul_pd(_mm256_loadu_pd(z + 2 * k), sv));
  }
  for (; k < nk; ++k) {
    z[2 * k] *= s[k];
    z[2 * k + 1] *= s[k];
  }
}

void cross3_avx2(double* ox, double* oy, double* oz, const double* ax,
                 const double* ay, const double* az, const double* bx,
                 const double* by, const double* bz, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vax = _mm256_loadu_pd(ax + i);
    const __m256d vay = _mm256_loadu_pd(ay + i);
    const __m256d vaz = _mm256_loadu_pd(az + i);
    const __m256d vbx = _mm256_loadu_pd(bx + i);
    const __m256d vby = _mm256_loadu_pd(by + i);
    const __m256d vbz = _mm256_loadu_pd(bz + i);
    _mm256_storeu_pd(ox + i, _mm256_sub_pd(_mm256_mul_pd(vay, vbz),
                                           _mm256_mul_pd(vaz, vby)));
    _mm256_storeu_pd(oy + i, _mm256_sub_pd(_mm256_mul_pd(vaz, vbx),
                                           _mm256_mul_pd(vax, vbz)));
    _mm256_storeu_pd(oz + i, _mm256_sub_pd(_mm256_mul_pd(vax, vby),
                                           _mm256_mul_pd(vay, vbx)));
  }
  for (; i < n; ++i) {
    ox[i] = ay[i] * bz[i] - az[i] * by[i];
    oy[i] = az[i] * bx[i] - ax[i] * bz[i];
    oz[i] = ax[i] * by[i] - ay[i] * bx[i];
  }
}

double reduce_min_avx2(const double* a, std::size_t n) {
  if (n < 8) {
    double r = a[0];
    for (std::size_t i = 1; i < n; ++i) r = a[i] < r ? a[i] : r;
    return r;
  }
  __m256d acc = _mm256_loadu_pd(a);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(a + i));
  double r = hmin(acc);
  for (; i < n; ++i) r = a[i] < r ? a[i] : r;
  return r;
}

double reduce_max_avx2(const double* a, std::size_t n) {
  if (n < 8) {
    double r = a[0];
    for (std::size_t i = 1; i < n; ++i) r = a[i] > r ? a[i] : r;
    return r;
  }
  __m256d acc = _mm256_loadu_pd(a);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
  double r = hmax(acc);
  for (; i < n; ++i) r = a[i] > r ? a[i] : r;
  return r;
}

double reduce_max_abs_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, vabs(_mm256_loadu_pd(a + i)));
  double r = hmax(acc);
  for (; i < n; ++i) {
    const double v = std::fabs(a[i]);
    r = v > r ? v : r;
  }
  return r;
}

double reduce_max_abs_diff_avx2(const double* a, const double* b,
                                std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, vabs(d));
  }
  double r = hmax(acc);
  for (; i < n; ++i) {
    const double v = std::fabs(a[i] - b[i]);
    r = v > r ? v : r;
  }
  return r;
}

void trig_eval_scalar_tail(const double* c, std::size_t nk, const double* x,
                           double* out, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    const double c1 = std::cos(x[j]);
    const double s1 = std::sin(x[j]);
    double cr = c1;
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

void trig_eval_avx2(const double* c, std::size_t nk, const double* x,
                    double* out, std::size_t m) {
  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) {
    // libm cos/sin per lane so the starting rotors match the scalar path.
    alignas(32) double c1a[4], s1a[4];
    for (int l = 0; l < 4; ++l) {
      c1a[l] = std::cos(x[j + l]);
      s1a[l] = std::sin(x[j + l]);
    }
    const __m256d c1 = _mm256_load_pd(c1a);
    const __m256d s1 = _mm256_load_pd(s1a);
    __m256d cr = c1;
    __m256d ci = s1;
    __m256d acc = _mm256_set1_pd(c[0]);
    for (std::size_t k = 1; k + 1 < nk; ++k) {
      const __m256d re2 = _mm256_set1_pd(2.0 * c[2 * k]);
      const __m256d im2 = _mm256_set1_pd(2.0 * c[2 * k + 1]);
      acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_mul_pd(re2, cr),
                                             _mm256_mul_pd(im2, ci)));
      const __m256d nr =
          _mm256_sub_pd(_mm256_mul_pd(cr, c1), _mm256_mul_pd(ci, s1));
      const __m256d ni =
          _mm256_add_pd(_mm256_mul_pd(cr, s1), _mm256_mul_pd(ci, c1));
      cr = nr;
      ci = ni;
    }
    if (nk > 1) {
      acc = _mm256_add_pd(acc,
                          _mm256_mul_pd(_mm256_set1_pd(c[2 * (nk - 1)]), cr));
    }
    _mm256_storeu_pd(out + j, acc);
  }
  if (j < m) trig_eval_scalar_tail(c, nk, x + j, out + j, m - j);
}

constexpr KernelTable kAvx2Table = {
    mul_avx2,           quadratic_terms_avx2,
    add_scaled_avx2,    rk4_combine_avx2,
    apply_real_symbol_avx2, cross3_avx2,
    reduce_min_avx2,    reduce_max_avx2,
    reduce_max_abs_avx2, reduce_max_abs_diff_avx2,
    trig_eval_avx2,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2Table; }

}  // namespace circleflow::kernels::detail

#else  // !defined(__AVX2__)

namespace circleflow::kernels::detail {

const KernelTable* avx2_table() { return nullptr; }

}  // namespace circleflow::kernels::detail

#endif
