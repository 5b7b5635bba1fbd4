#include <doctest.h>

#include <cmath>
#include <complex>

#include "circleflow/errors.hpp"
#include "circleflow/fft.hpp"
#include "circleflow/grid.hpp"
#include "circleflow/inertia.hpp"
#include "circleflow/kernels.hpp"
#include "circleflow/spectral.hpp"
#include "oracles.hpp"

using namespace circleflow;
using doctest::Approx;

namespace {

double kernels_max_abs(const GridFunction& f) {
  return kernels::reduce_max_abs(f.values().data(), f.values().size());
}

GridFunction random_bandlimited(const Grid& g, oracles::TestRng& rng, int kmax,
                                double amp) {
  std::vector<double> a, b;
  for (int k = 1; k <= kmax; ++k) {
    a.push_back(rng.uniform(-amp, amp) / k);
    b.push_back(rng.uniform(-amp, amp) / k);
  }
  return GridFunction::sample(g, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= kmax; ++k)
      s += a[static_cast<std::size_t>(k - 1)] * std::cos(k * x) +
           b[static_cast<std::size_t>(k - 1)] * std::sin(k * x);
    return s;
  });
}

double sup_diff(const GridFunction& f, const GridFunction& g) {
  double d = 0.0;
  for (int i = 0; i < f.size(); ++i)
    d = std::max(d, std::abs(f[i] - g[i]));
  return d;
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid(7), Error);
  CHECK_THROWS_AS(Grid(6), Error);
  CHECK_THROWS_AS(Grid(9), Error);
  Grid g(32);
  CHECK(g.size() == 32);
  CHECK(g.dealias_cutoff() == 10);
  CHECK(g.point(0) == 0.0);
  CHECK(g.point(16) == Approx(M_PI).epsilon(1e-15));
  auto pts = g.points();
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i] > pts[i - 1]);
  CHECK(pts.back() < kTwoPi);
}

TEST_CASE("grid function rejects non-finite data") {
  Grid g(16);
  std::vector<double> v(16, 1.0);
  v[3] = std::nan("");
  CHECK_THROWS_WITH_AS(GridFunction(g, v), "non-finite field", Error);
}

TEST_CASE("forward transform matches the naive DFT") {
  Grid g(32);
  oracles::TestRng rng(5);
  auto v = rng.vector(32, -1.0, 1.0);
  auto lib = fft::forward(v);
  auto ref = oracles::naive_dft(v);
  REQUIRE(lib.size() == ref.size());
  for (std::size_t k = 0; k < lib.size(); ++k)
    CHECK(std::abs(lib[k] - ref[k]) < 1e-13);

  auto back = fft::inverse(lib, 32);
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(back[i] == Approx(v[i]).epsilon(1e-13));
}

TEST_CASE("deriv: exact Fourier eigenfunctions") {
  Grid g(32);
  auto f = GridFunction::sample(g, [](double x) { return std::sin(x); });
  auto d = deriv(f, 1);
  auto expect = GridFunction::sample(g, [](double x) { return std::cos(x); });
  CHECK(sup_diff(d, expect) < 1e-14);

  auto c = GridFunction::sample(g, [](double) { return 3.25; });
  for (int order = 1; order <= 4; ++order)
    CHECK(kernels_max_abs(deriv(c, order)) < 1e-14);
}

TEST_CASE("deriv: second derivative symbol at k=3") {
  Grid g(32);
  auto f = GridFunction::sample(g, [](double x) { return std::sin(3 * x); });
  auto d2 = deriv(f, 2);
  auto expect =
      GridFunction::sample(g, [](double x) { return -9.0 * std::sin(3 * x); });
  CHECK(sup_diff(d2, expect) < 1e-12);
}

TEST_CASE("deriv: errors") {
  Grid g(16);
  GridFunction f(g);
  CHECK_THROWS_AS(deriv(f, 0), Error);
  CHECK_THROWS_AS(deriv(f, 5), Error);
  auto bad = GridFunction::unchecked(
      g, std::vector<double>(16, std::numeric_limits<double>::infinity()));
  CHECK_THROWS_WITH_AS(deriv(bad, 1), "non-finite field", Error);
}

TEST_CASE("deriv composes and commutes with dealias") {
  Grid g(64);
  oracles::TestRng rng(7);
  auto f = random_bandlimited(g, rng, 12, 1.0);
  CHECK(sup_diff(deriv(deriv(f, 1), 1), deriv(f, 2)) < 1e-11);
  CHECK(sup_diff(dealias(deriv(f, 1)), deriv(dealias(f), 1)) < 1e-12);
}

TEST_CASE("dealias: band-limited data unchanged, cutoff modes removed") {
  Grid g(32);
  auto low = GridFunction::sample(g, [](double x) { return std::sin(x); });
  CHECK(sup_diff(dealias(low), low) < 1e-14);

  auto high =
      GridFunction::sample(g, [](double x) { return std::sin(15.0 * x); });
  CHECK(kernels_max_abs(dealias(high)) < 1e-13);

  auto mix = GridFunction::sample(
      g, [](double x) { return std::sin(x) + std::sin(15.0 * x); });
  CHECK(sup_diff(dealias(mix), low) < 1e-13);
}

TEST_CASE("mean examples") {
  Grid g(32);
  CHECK(std::abs(mean(GridFunction::sample(
            g, [](double x) { return std::sin(x); }))) < 1e-14);
  CHECK(mean(GridFunction::sample(g, [](double) { return 2.5; })) ==
        Approx(2.5));
  CHECK(mean(GridFunction::sample(g, [](double x) {
          return 1.0 + 0.5 * std::cos(2 * x);
        })) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("interp: identity at grid points and resolved-mode exactness") {
  Grid g(32);
  auto f = GridFunction::sample(g, [](double x) { return std::sin(x); });
  CHECK(interp_at(f, M_PI / 2) == Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(interp_at(f, 0.3) - std::sin(0.3)) < 1e-12);

  oracles::TestRng rng(9);
  auto h = random_bandlimited(g, rng, 10, 1.0);
  auto pts = g.points();
  auto vals = interp(h, pts);
  for (int i = 0; i < g.size(); ++i)
    CHECK(std::abs(vals[static_cast<std::size_t>(i)] - h[i]) < 1e-12);

  // Rigid rotation by a grid-commensurate shift equals index rotation.
  const int shift = 5;
  std::vector<double> rot(pts);
  for (auto& x : rot) x += shift * g.spacing();
  auto rvals = interp(h, rot);
  for (int i = 0; i < g.size(); ++i)
    CHECK(std::abs(rvals[static_cast<std::size_t>(i)] -
                   h[(i + shift) % g.size()]) < 1e-12);
}

TEST_CASE("interp: band-limited exactness against direct evaluation") {
  Grid g(64);
  oracles::TestRng rng(21);
  std::vector<double> a, b;
  const int kmax = 9;
  for (int k = 1; k <= kmax; ++k) {
    a.push_back(rng.uniform(-1.0, 1.0) / k);
    b.push_back(rng.uniform(-1.0, 1.0) / k);
  }
  auto closed = [&](double x) {
    double s = 0.4;
    for (int k = 1; k <= kmax; ++k)
      s += a[static_cast<std::size_t>(k - 1)] * std::cos(k * x) +
           b[static_cast<std::size_t>(k - 1)] * std::sin(k * x);
    return s;
  };
  auto f = GridFunction::sample(g, closed);
  for (double x : {0.0, 0.1, 1.7, 3.9, 6.2, -2.0, 9.5})
    CHECK(std::abs(interp_at(f, x) - closed(x)) < 1e-12);
}

TEST_CASE("apply_phi examples") {
  Grid g(32);
  auto cosx = GridFunction::sample(g, [](double x) { return std::cos(x); });
  auto out = apply_phi(InertiaOperator::sobolev(1), cosx);
  auto expect =
      GridFunction::sample(g, [](double x) { return 2.0 * std::cos(x); });
  CHECK(sup_diff(out, expect) < 1e-13);

  auto sin2 = GridFunction::sample(g, [](double x) { return std::sin(2 * x); });
  auto out2 = apply_phi(InertiaOperator::sobolev(2), sin2);
  auto expect2 = GridFunction::sample(
      g, [](double x) { return 21.0 * std::sin(2 * x); });
  // The order-4 symbol amplifies spectral rounding of the input by p(n/2).
  CHECK(sup_diff(out2, expect2) < 1e-10);

  auto c = GridFunction::sample(g, [](double) { return 4.0; });
  CHECK(kernels_max_abs(apply_phi(InertiaOperator::minus_dxx(), c)) < 1e-14);

  // mu - dxx maps the mean mode to the mean itself.
  auto f = GridFunction::sample(
      g, [](double x) { return 1.5 + std::sin(3 * x); });
  auto mu = apply_phi(InertiaOperator::mu_minus_dxx(), f);
  CHECK(mean(mu) == Approx(1.5).epsilon(1e-14));
}

TEST_CASE("invert_phi examples and gauge handling") {
  Grid g(32);
  auto m = GridFunction::sample(g, [](double x) { return 2.0 * std::cos(x); });
  auto u = invert_phi(InertiaOperator::sobolev(1), m, 0.0);
  auto cosx = GridFunction::sample(g, [](double x) { return std::cos(x); });
  CHECK(sup_diff(u, cosx) < 1e-13);

  auto sinx = GridFunction::sample(g, [](double x) { return std::sin(x); });
  auto hs = invert_phi(InertiaOperator::minus_dxx(), sinx, 0.0);
  CHECK(sup_diff(hs, sinx) < 1e-13);

  auto c = GridFunction::sample(g, [](double) { return 0.75; });
  auto cc = invert_phi(InertiaOperator::mu_minus_dxx(), c, 0.75);
  CHECK(sup_diff(cc, c) < 1e-14);
}

TEST_CASE("invert_phi error paths") {
  Grid g(32);
  auto withmean = GridFunction::sample(
      g, [](double x) { return 0.5 + std::sin(x); });
  CHECK_THROWS_AS(invert_phi(InertiaOperator::minus_dxx(), withmean, 0.0),
                  Error);
  // Inconsistent gauge mean for an invertible operator.
  CHECK_THROWS_AS(invert_phi(InertiaOperator::sobolev(1), withmean, 3.0),
                  Error);
}

TEST_CASE("round trip invert(apply) for all operator kinds") {
  Grid g(64);
  oracles::TestRng rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    // Band limits keep the symbol amplification p(kmax) modest; otherwise
    // the two transforms between apply and invert lose digits to
    // conditioning, not to the operators.
    auto f0 = random_bandlimited(g, rng, 8, 1.0);
    const double cmean = rng.uniform(-1.0, 1.0);
    std::vector<double> shifted(f0.values().begin(), f0.values().end());
    for (auto& v : shifted) v += cmean;
    GridFunction f(g, shifted);

    for (auto op : {InertiaOperator::sobolev(0), InertiaOperator::sobolev(1),
                    InertiaOperator::sobolev(2), InertiaOperator::mu_minus_dxx()}) {
      auto rt = invert_phi(op, apply_phi(op, f), mean(f));
      CHECK(sup_diff(rt, f) < 1e-12);
    }
    // The singular operator round-trips on its invertible complement with
    // the mean supplied as gauge.
    auto rt = invert_phi(InertiaOperator::minus_dxx(),
                         apply_phi(InertiaOperator::minus_dxx(), f), mean(f));
    CHECK(sup_diff(rt, f) < 1e-12);

    auto g3 = random_bandlimited(g, rng, 4, 1.0);
    auto rt3 = invert_phi(InertiaOperator::sobolev(3),
                          apply_phi(InertiaOperator::sobolev(3), g3), mean(g3));
    CHECK(sup_diff(rt3, g3) < 1e-12);
  }
}

TEST_CASE("symbols match closed forms exactly for k = 0..8") {
  for (int k = 0; k <= 8; ++k) {
    const double k2 = static_cast<double>(k) * k;
    CHECK(InertiaOperator::sobolev(0).symbol(k) == 1.0);
    CHECK(InertiaOperator::sobolev(1).symbol(k) == 1.0 + k2);
    CHECK(InertiaOperator::sobolev(2).symbol(k) == 1.0 + k2 + k2 * k2);
    CHECK(InertiaOperator::mu_minus_dxx().symbol(k) == (k == 0 ? 1.0 : k2));
    CHECK(InertiaOperator::minus_dxx().symbol(k) == k2);
  }
  CHECK(InertiaOperator::minus_dxx().invertible() == false);
  CHECK(InertiaOperator::sobolev(2).invertible());
}

TEST_SUITE_END();
