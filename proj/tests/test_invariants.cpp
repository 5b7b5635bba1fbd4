#include <doctest.h>

#include <cmath>

#include "circleflow/equations.hpp"
#include "circleflow/errors.hpp"
#include "circleflow/evolution.hpp"
#include "circleflow/invariants.hpp"
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

TEST_SUITE_BEGIN("invariants");

TEST_CASE("orbit invariant at the identity is the momentum itself") {
  Grid g(64);
  auto spec = preset("ch").spec;
  auto m = GridFunction::sample(
      g, [](double x) { return 1.0 + 0.3 * std::sin(x); });
  auto orb = orbit_invariant(spec, m, FlowMap::identity(g));
  CHECK(sup_diff(orb, m) < 1e-12);
}

TEST_CASE("orbit invariant of a constant solution is the constant") {
  Grid g(64);
  auto spec = preset("ch").spec;
  const double c = 0.8;
  auto m = GridFunction::sample(g, [&](double) { return 2.0 * c; });
  // gamma = id + ct is a rotation with gamma' = 1.
  auto flow = FlowMap::rotation(g, c * 1.7);
  auto orb = orbit_invariant(spec, m, flow);
  for (int i = 0; i < g.size(); ++i) CHECK(orb[i] == Approx(2.0 * c).epsilon(1e-13));
}

TEST_CASE("kelvin quantity at t=0 is the pairing with xi0") {
  Grid g(64);
  auto spec = preset("ch").spec;
  auto m = GridFunction::sample(
      g, [](double x) { return 1.0 + 0.5 * std::cos(2 * x); });
  auto xi = GridFunction::sample(g, [](double x) { return std::cos(2 * x); });
  const double i0 = kelvin_quantity(spec, m, FlowMap::identity(g), xi);
  // integral of (1 + 0.5 cos^2(2x) + ...) = 0.5 * pi over the circle
  CHECK(i0 == Approx(0.5 * M_PI).epsilon(1e-12));
}

TEST_CASE("kelvin quantity of a constant solution with xi0 = sin x vanishes") {
  Grid g(64);
  auto spec = preset("ch").spec;
  const double c = 0.6;
  auto m = GridFunction::sample(g, [&](double) { return 2.0 * c; });
  auto xi = GridFunction::sample(g, [](double x) { return std::sin(x); });
  for (double t : {0.0, 0.5, 2.0}) {
    auto flow = FlowMap::rotation(g, c * t);
    CHECK(std::abs(kelvin_quantity(spec, m, flow, xi)) < 1e-12);
  }
}

TEST_CASE("kelvin basis helper agrees with the generic evaluator") {
  Grid g(64);
  auto spec = preset("ch").spec;
  auto u0 = GridFunction::sample(
      g, [](double x) { return 1.0 + 0.3 * std::sin(x); });
  IntegratorConfig cfg;
  cfg.dt = 2e-3;
  cfg.t_end = 0.4;
  auto run = integrate(spec, u0, cfg);
  const auto& s = run.trajectory.back();
  auto basis = kelvin_basis_quantities(spec, s.m, s.flow);
  auto one = GridFunction::sample(g, [](double) { return 1.0; });
  auto sinx = GridFunction::sample(g, [](double x) { return std::sin(x); });
  auto cosx = GridFunction::sample(g, [](double x) { return std::cos(x); });
  CHECK(basis[0] == Approx(kelvin_quantity(spec, s.m, s.flow, one)).epsilon(1e-11));
  CHECK(basis[1] == Approx(kelvin_quantity(spec, s.m, s.flow, sinx)).epsilon(1e-11));
  CHECK(basis[2] == Approx(kelvin_quantity(spec, s.m, s.flow, cosx)).epsilon(1e-11));
}

TEST_CASE("conservation along a ch run: orbit, kelvin, momentum, energy") {
  Grid g(128);
  auto spec = preset("ch").spec;
  auto u0 = GridFunction::sample(
      g, [](double x) { return 1.0 + 0.3 * std::sin(x); });
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_every = 100;
  auto run = integrate(spec, u0, cfg);
  REQUIRE(run.verdict.completed());
  const auto& recs = run.diagnostics.records();
  const auto& first = recs.front();
  for (const auto& r : recs) {
    CHECK(r.orbit_drift < 1e-6);
    CHECK(std::abs(r.momentum_integral - first.momentum_integral) <
          1e-10 * (1.0 + std::abs(first.momentum_integral)));
    CHECK(std::abs(r.energy - first.energy) <
          1e-8 * (1.0 + std::abs(first.energy)));
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(r.kelvin[static_cast<std::size_t>(j)] -
                     first.kelvin[static_cast<std::size_t>(j)]) <
            1e-8 * (1.0 + std::abs(first.kelvin[static_cast<std::size_t>(j)])));
  }
}

TEST_CASE("kelvin quantities conserved for the basis up to wavenumber 4") {
  Grid g(128);
  auto spec = preset("ch").spec;
  auto u0 = GridFunction::sample(
      g, [](double x) { return 1.0 + 0.3 * std::sin(x); });
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.record_every = 1 << 20;
  auto run = integrate(spec, u0, cfg);
  REQUIRE(run.verdict.completed());
  const auto& s0 = run.trajectory.front();
  const auto& s1 = run.trajectory.back();
  for (int k = 1; k <= 4; ++k) {
    for (bool use_sin : {true, false}) {
      auto xi = GridFunction::sample(g, [&](double x) {
        return use_sin ? std::sin(k * x) : std::cos(k * x);
      });
      const double i0 = kelvin_quantity(spec, s0.m, s0.flow, xi);
      const double i1 = kelvin_quantity(spec, s1.m, s1.flow, xi);
      CHECK(std::abs(i1 - i0) <= 1e-8 * (1.0 + std::abs(i0)));
    }
  }
}

TEST_CASE("momentum integral, energy, c1 norm examples") {
  Grid g(64);
  auto m = GridFunction::sample(
      g, [](double x) { return 1.0 + std::sin(x); });
  CHECK(momentum_integral(m) == Approx(kTwoPi).epsilon(1e-13));

  auto u = GridFunction::sample(g, [](double x) { return std::cos(x); });
  CHECK(energy(preset("ch").spec, u) == Approx(M_PI).epsilon(1e-13));

  auto v = GridFunction::sample(
      g, [](double x) { return 2.0 + std::sin(x); });
  CHECK(c1_norm(v) == Approx(4.0).epsilon(1e-3));
}

TEST_CASE("sign condition examples") {
  Grid g(64);
  auto spec = preset("ch").spec;
  auto good = GridFunction::sample(
      g, [](double x) { return 1.0 + 0.1 * std::sin(x); });
  auto sc = sign_condition(spec, good);
  CHECK(sc.holds);
  CHECK(sc.min_value == Approx(0.8).epsilon(1e-3));

  auto bad = GridFunction::sample(g, [](double x) { return std::sin(x); });
  auto sb = sign_condition(spec, bad);
  CHECK_FALSE(sb.holds);
  CHECK(sb.min_value == Approx(-2.0).epsilon(1e-3));

  auto c2 = GridFunction::sample(g, [](double) { return 2.0; });
  auto sd = sign_condition(preset("dp").spec, c2);
  CHECK(sd.holds);
  CHECK(sd.min_value == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("drift report: constant solution has zero drift everywhere") {
  Grid g(32);
  auto spec = preset("ch").spec;
  auto u0 = GridFunction::sample(g, [](double) { return 0.9; });
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 1.0;
  auto run = integrate(spec, u0, cfg);
  auto rep = drift_report(run.diagnostics);
  CHECK(rep.all_pass);
  CHECK(rep.reliable_horizon == Approx(1.0));
  for (const auto& e : rep.entries) CHECK(e.max_drift < 1e-12);
}

TEST_CASE("drift report: healthy ch run passes, breaking run flags a horizon") {
  Grid g(128);
  auto spec = preset("ch").spec;
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_every = 100;
  auto good = integrate(spec,
                        GridFunction::sample(g, [](double x) {
                          return 1.0 + 0.3 * std::sin(x);
                        }),
                        cfg);
  auto grep = drift_report(good.diagnostics);
  CHECK(grep.all_pass);

  IntegratorConfig bcfg = cfg;
  bcfg.t_end = 5.0;
  bcfg.record_every = 25;
  auto bad = integrate(spec,
                       GridFunction::sample(g, [](double x) {
                         return std::sin(x);
                       }),
                       bcfg);
  CHECK_FALSE(bad.verdict.completed());
  auto brep = drift_report(bad.diagnostics);
  CHECK(brep.reliable_horizon < bad.verdict.t);
  // Momentum stays conserved on the reliable window even though the run broke.
  for (const auto& e : brep.entries)
    if (e.invariant == "momentum") CHECK(e.max_drift < 1e-8);
}

TEST_CASE("drift report rejects an empty series") {
  DiagnosticsSeries s(preset("ch").spec);
  CHECK_THROWS_AS(drift_report(s), Error);
}

TEST_CASE("series times must increase") {
  DiagnosticsSeries s(preset("ch").spec);
  DiagnosticsRecord r;
  r.t = 0.0;
  s.append(r);
  CHECK_THROWS_AS(s.append(r), Error);
}

TEST_SUITE_END();
