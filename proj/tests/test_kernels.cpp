#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "circleflow/kernels.hpp"
#include "oracles.hpp"

using namespace circleflow;
using oracles::TestRng;

namespace {

struct BackendGuard {
  kernels::Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::set_backend(saved); }
};

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE_BEGIN("kernels");

TEST_CASE("scalar reference kernels match straightforward loops") {
  TestRng rng(11);
  BackendGuard guard;
  REQUIRE(kernels::set_backend(kernels::Backend::scalar));

  const std::size_t n = 37;  // odd size exercises remainders elsewhere
  auto a = rng.vector(n, -2.0, 2.0);
  auto b = rng.vector(n, -2.0, 2.0);

  std::vector<double> out(n);
  kernels::mul(out.data(), a.data(), b.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == a[i] * b[i]);

  kernels::add_scaled(out.data(), a.data(), 0.5, b.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == a[i] + 0.5 * b[i]);

  double mn = a[0], mx = a[0], ma = 0.0, mad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mn = std::min(mn, a[i]);
    mx = std::max(mx, a[i]);
    ma = std::max(ma, std::abs(a[i]));
    mad = std::max(mad, std::abs(a[i] - b[i]));
  }
  CHECK(kernels::reduce_min(a.data(), n) == mn);
  CHECK(kernels::reduce_max(a.data(), n) == mx);
  CHECK(kernels::reduce_max_abs(a.data(), n) == ma);
  CHECK(kernels::reduce_max_abs_diff(a.data(), b.data(), n) == mad);
}

TEST_CASE("avx2 and scalar backends are bitwise identical") {
  if (!kernels::set_backend(kernels::Backend::avx2)) {
    MESSAGE("avx2 not available on this host; skipping");
    return;
  }
  BackendGuard guard;
  TestRng rng(42);

  for (std::size_t n : {1u, 4u, 7u, 64u, 129u, 1024u}) {
    auto u = rng.vector(n, -3.0, 3.0);
    auto v = rng.vector(n, -3.0, 3.0);
    auto w = rng.vector(n, -3.0, 3.0);
    auto z = rng.vector(n, -3.0, 3.0);
    const double lambda = rng.uniform(0.0, 4.0);
    const double h = rng.uniform(1e-4, 1e-2);

    auto run_all = [&]() {
      struct Out {
        std::vector<double> mul, quad, axpy, rk4, crossx, crossy, crossz, trig;
        std::vector<double> sym;
        double rmin, rmax, rabs, rdiff;
      } o;
      o.mul.resize(n);
      kernels::mul(o.mul.data(), u.data(), v.data(), n);
      o.quad.resize(n);
      kernels::quadratic_terms(o.quad.data(), u.data(), v.data(), w.data(),
                               z.data(), lambda, n);
      o.axpy.resize(n);
      kernels::add_scaled(o.axpy.data(), u.data(), 1.7, v.data(), n);
      o.rk4.resize(n);
      kernels::rk4_combine(o.rk4.data(), u.data(), h, v.data(), w.data(),
                           z.data(), u.data(), n);
      o.crossx.resize(n);
      o.crossy.resize(n);
      o.crossz.resize(n);
      kernels::cross3(o.crossx.data(), o.crossy.data(), o.crossz.data(),
                      u.data(), v.data(), w.data(), z.data(), u.data(),
                      v.data(), n);
      o.sym = u;  // reinterpret as interleaved complex of n/2 modes
      kernels::apply_real_symbol(o.sym.data(), v.data(), n / 2);
      o.rmin = kernels::reduce_min(u.data(), n);
      o.rmax = kernels::reduce_max(u.data(), n);
      o.rabs = kernels::reduce_max_abs(u.data(), n);
      o.rdiff = kernels::reduce_max_abs_diff(u.data(), v.data(), n);
      o.trig.resize(n);
      // u as a fake half spectrum over the first n/2 modes (pairs), targets w
      kernels::trig_eval(u.data(), n / 2, w.data(), o.trig.data(), n);
      return o;
    };

    REQUIRE(kernels::set_backend(kernels::Backend::avx2));
    auto simd = run_all();
    REQUIRE(kernels::set_backend(kernels::Backend::scalar));
    auto ref = run_all();

    CHECK(bitwise_equal(simd.mul, ref.mul));
    CHECK(bitwise_equal(simd.quad, ref.quad));
    CHECK(bitwise_equal(simd.axpy, ref.axpy));
    CHECK(bitwise_equal(simd.rk4, ref.rk4));
    CHECK(bitwise_equal(simd.crossx, ref.crossx));
    CHECK(bitwise_equal(simd.crossy, ref.crossy));
    CHECK(bitwise_equal(simd.crossz, ref.crossz));
    CHECK(bitwise_equal(simd.sym, ref.sym));
    CHECK(bitwise_equal(simd.trig, ref.trig));
    CHECK(simd.rmin == ref.rmin);
    CHECK(simd.rmax == ref.rmax);
    CHECK(simd.rabs == ref.rabs);
    CHECK(simd.rdiff == ref.rdiff);
  }
}

TEST_CASE("quadratic terms keep signed zeros consistent across backends") {
  if (!kernels::set_backend(kernels::Backend::avx2)) return;
  BackendGuard guard;
  std::vector<double> zero(8, 0.0);
  std::vector<double> simd(8), ref(8);
  kernels::quadratic_terms(simd.data(), zero.data(), zero.data(), zero.data(),
                           zero.data(), 2.0, 8);
  kernels::set_backend(kernels::Backend::scalar);
  kernels::quadratic_terms(ref.data(), zero.data(), zero.data(), zero.data(),
                           zero.data(), 2.0, 8);
  CHECK(bitwise_equal(simd, ref));
}

TEST_SUITE_END();
