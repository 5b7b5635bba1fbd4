#include <doctest.h>

#include <cmath>

#include "circleflow/equations.hpp"
#include "circleflow/errors.hpp"
#include "oracles.hpp"

using namespace circleflow;
using doctest::Approx;

namespace {

double sup_diff(const GridFunction& f, const GridFunction& g) {
  double d = 0.0;
  for (int i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
  return d;
}

}  // namespace

TEST_SUITE_BEGIN("equations");

TEST_CASE("preset table") {
  auto ch = preset("ch");
  CHECK(ch.spec.lambda == 2.0);
  CHECK(ch.spec.phi == InertiaOperator::sobolev(1));
  CHECK(ch.spec.gauge == Gauge::none);
  CHECK_FALSE(ch.spec.homogeneous);

  auto dp = preset("dp");
  CHECK(dp.spec.lambda == 3.0);
  CHECK(dp.spec.phi == InertiaOperator::sobolev(1));

  auto hs = preset("hs");
  CHECK(hs.spec.lambda == 2.0);
  CHECK(hs.spec.phi == InertiaOperator::minus_dxx());
  CHECK(hs.spec.gauge == Gauge::fixed_mean);
  CHECK(hs.spec.homogeneous);

  auto burgers = preset("burgers");
  CHECK(burgers.spec.phi == InertiaOperator::sobolev(0));
  CHECK(burgers.spec.lambda == 2.0);

  CHECK(preset("much").spec.phi == InertiaOperator::mu_minus_dxx());
  CHECK(preset("much").spec.lambda == 2.0);
  CHECK(preset("mudp").spec.phi == InertiaOperator::mu_minus_dxx());
  CHECK(preset("mudp").spec.lambda == 3.0);

  auto mub = preset("muburgers");
  CHECK(mub.spec.lambda == 3.0);
  CHECK(mub.spec.homogeneous);

  // ch/dp and hs/muburgers differ only in lambda.
  CHECK(ch.spec.phi == dp.spec.phi);
  CHECK(hs.spec.phi == mub.spec.phi);
  CHECK(ch.spec.lambda != dp.spec.lambda);
  CHECK(hs.spec.lambda != mub.spec.lambda);

  auto sob = preset("sobolev(2,2.5)");
  CHECK(sob.spec.phi == InertiaOperator::sobolev(2));
  CHECK(sob.spec.lambda == 2.5);
}

TEST_CASE("unknown presets report the valid names") {
  try {
    preset("chh");
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    for (const char* name :
         {"burgers", "ch", "much", "dp", "mudp", "hs", "muburgers", "sobolev"})
      CHECK(msg.find(name) != std::string::npos);
  }
}

TEST_CASE("every preset lists at least orbit and momentum invariants") {
  for (const auto& e : catalog()) {
    auto has = [&](const char* s) {
      for (const auto& inv : e.known_invariants)
        if (inv == s) return true;
      return false;
    };
    CHECK(has("orbit"));
    CHECK(has("momentum"));
    CHECK(has("energy") == (e.spec.lambda == 2.0));
    CHECK(has("kelvin") == (e.spec.lambda == 2.0));
    const bool mu_or_fixed =
        e.spec.phi.kind() == InertiaOperator::Kind::mu_minus_dxx ||
        e.spec.gauge == Gauge::fixed_mean;
    CHECK(has("mean_u") == mu_or_fixed);
    CHECK(!e.reference.empty());
  }
}

TEST_CASE("spec validation") {
  EquationSpec bad = preset("hs").spec;
  bad.gauge = Gauge::none;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = preset("ch").spec;
  bad.homogeneous = true;
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("momentum examples") {
  Grid g(32);
  auto cosx = GridFunction::sample(g, [](double x) { return std::cos(x); });
  auto m = momentum(preset("ch").spec, cosx);
  CHECK(sup_diff(m, GridFunction::sample(g, [](double x) {
            return 2.0 * std::cos(x);
          })) < 1e-13);

  auto sinx = GridFunction::sample(g, [](double x) { return std::sin(x); });
  CHECK(sup_diff(momentum(preset("hs").spec, sinx), sinx) < 1e-13);

  auto onesin = GridFunction::sample(
      g, [](double x) { return 1.0 + std::sin(x); });
  CHECK(sup_diff(momentum(preset("much").spec, onesin), onesin) < 1e-13);
}

TEST_CASE("velocity examples") {
  Grid g(32);
  auto m = GridFunction::sample(g, [](double x) { return 2.0 * std::cos(x); });
  CHECK(sup_diff(velocity(preset("ch").spec, m, 0.0),
                 GridFunction::sample(g, [](double x) { return std::cos(x); })) <
        1e-13);

  auto m2 =
      GridFunction::sample(g, [](double x) { return 4.0 * std::sin(2 * x); });
  CHECK(sup_diff(velocity(preset("hs").spec, m2, 0.0),
                 GridFunction::sample(
                     g, [](double x) { return std::sin(2 * x); })) < 1e-13);

  auto m3 = GridFunction::sample(g, [](double x) { return std::cos(x); });
  CHECK(sup_diff(velocity(preset("muburgers").spec, m3, 1.0),
                 GridFunction::sample(
                     g, [](double x) { return 1.0 + std::cos(x); })) < 1e-13);
}

TEST_CASE("momentum then velocity is the identity on gauge-consistent data") {
  Grid g(64);
  oracles::TestRng rng(3);
  for (const auto& entry : catalog()) {
    std::vector<double> vals(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
      const double x = g.point(i);
      vals[static_cast<std::size_t>(i)] =
          rng.uniform(-0.2, 0.2) + 0.9 * std::sin(x) + 0.3 * std::cos(3 * x);
    }
    GridFunction u(g, vals);
    auto rt = velocity(entry.spec, momentum(entry.spec, u), mean(u));
    CHECK(sup_diff(rt, u) < 1e-12);
  }
}

TEST_SUITE_END();
