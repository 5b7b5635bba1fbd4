#include "circleflow/landau.hpp"

#include <cmath>

#include "circleflow/errors.hpp"
#include "circleflow/kernels.hpp"
#include "circleflow/spectral.hpp"

namespace circleflow {

LoopField::LoopField(const Grid& grid) : grid_(grid) {
  for (auto& c : comp_)
    c.assign(static_cast<std::size_t>(grid.size()), 0.0);
}

LoopField::LoopField(const Grid& grid,
                     std::array<std::vector<double>, 3> components)
    : grid_(grid), comp_(std::move(components)) {
  for (const auto& c : comp_)
    if (c.size() != static_cast<std::size_t>(grid.size()))
      throw Error("loop field component length does not match grid size");
  if (!finite()) throw Error("non-finite field");
}

double LoopField::norm_at(int i) const {
  const auto j = static_cast<std::size_t>(i);
  return std::sqrt(comp_[0][j] * comp_[0][j] + comp_[1][j] * comp_[1][j] +
                   comp_[2][j] * comp_[2][j]);
}

bool LoopField::finite() const {
  for (const auto& c : comp_)
    for (double v : c)
      if (!std::isfinite(v)) return false;
  return true;
}

void LoopField::assert_unit_norm(double tol) const {
  for (int i = 0; i < size(); ++i)
    if (std::abs(norm_at(i) - 1.0) > tol)
      throw Error("loop field is not pointwise unit norm");
}

LoopField rhs_ll(const LoopField& L) {
  if (!L.finite()) throw Error("non-finite field");
  const Grid& g = L.grid();
  std::array<std::vector<double>, 3> lpp;
  for (int c = 0; c < 3; ++c) {
    GridFunction d2 =
        deriv(GridFunction::unchecked(g, L.component(c)), 2);
    lpp[static_cast<std::size_t>(c)].assign(d2.values().begin(),
                                            d2.values().end());
  }
  const auto n = static_cast<std::size_t>(g.size());
  std::array<std::vector<double>, 3> out;
  for (auto& o : out) o.resize(n);
  kernels::cross3(out[0].data(), out[1].data(), out[2].data(),
                  L.component(0).data(), L.component(1).data(),
                  L.component(2).data(), lpp[0].data(), lpp[1].data(),
                  lpp[2].data(), n);
  for (auto& o : out) {
    GridFunction f = dealias(GridFunction::unchecked(g, std::move(o)));
    o.assign(f.values().begin(), f.values().end());
  }
  return LoopField(g, std::move(out));
}

LoopField spin_wave(const Grid& grid, double theta, int k, double t) {
  const double omega = -static_cast<double>(k) * k * std::cos(theta);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  return LoopField::sample(grid, [&](double x) -> std::array<double, 3> {
    const double phase = k * x + omega * t;
    return {st * std::cos(phase), st * std::sin(phase), ct};
  });
}

double ll_energy(const LoopField& L) {
  const Grid& g = L.grid();
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    GridFunction d1 = deriv(GridFunction::unchecked(g, L.component(c)), 1);
    for (double v : d1.values()) acc += v * v;
  }
  return 0.5 * kTwoPi * acc / g.size();
}

std::array<double, 3> ll_mean_vector(const LoopField& L) {
  std::array<double, 3> m{};
  for (int c = 0; c < 3; ++c) {
    double acc = 0.0;
    for (double v : L.component(c)) acc += v;
    m[static_cast<std::size_t>(c)] = kTwoPi * acc / L.size();
  }
  return m;
}

double ll_norm_deviation(const LoopField& L, const LoopField& L0) {
  double dev = 0.0;
  for (int i = 0; i < L.size(); ++i)
    dev = std::max(dev, std::abs(L.norm_at(i) - L0.norm_at(i)));
  return dev;
}

LLResult integrate_ll(const LoopField& L0, const IntegratorConfig& cfg) {
  validate(cfg);
  if (!L0.finite()) throw Error("non-finite field");

  const Grid& g = L0.grid();
  const auto n = static_cast<std::size_t>(g.size());
  LoopField L = L0;
  double t = 0.0;

  auto axpy = [&](const LoopField& y, double c, const LoopField& k) {
    LoopField out(g);
    for (int j = 0; j < 3; ++j)
      kernels::add_scaled(out.component(j).data(), y.component(j).data(), c,
                          k.component(j).data(), n);
    return out;
  };

  LLResult out;
  auto record = [&]() {
    LLRecord r;
    r.t = t;
    r.norm_drift = ll_norm_deviation(L, L0);
    r.energy = ll_energy(L);
    r.mean_vector = ll_mean_vector(L);
    out.records.push_back(r);
    out.times.push_back(t);
    out.trajectory.push_back(L);
  };
  record();

  const long long nsteps = std::llround(cfg.t_end / cfg.dt);
  for (long long i = 1; i <= nsteps; ++i) {
    const double dt = cfg.dt;
    LoopField next(g);
    try {
      const LoopField k1 = rhs_ll(L);
      const LoopField k2 = rhs_ll(axpy(L, dt / 2, k1));
      const LoopField k3 = rhs_ll(axpy(L, dt / 2, k2));
      const LoopField k4 = rhs_ll(axpy(L, dt, k3));
      for (int j = 0; j < 3; ++j)
        kernels::rk4_combine(next.component(j).data(), L.component(j).data(),
                             dt, k1.component(j).data(), k2.component(j).data(),
                             k3.component(j).data(), k4.component(j).data(), n);
    } catch (const Error&) {
      out.verdict = Verdict::breakdown("non-finite state", i * dt);
      return out;
    }
    t = i * dt;
    if (!next.finite()) {
      out.verdict = Verdict::breakdown("non-finite state", t);
      return out;
    }
    L = std::move(next);
    if (i % cfg.record_every == 0 || i == nsteps) record();
  }
  out.verdict = Verdict{Verdict::Status::completed, "", cfg.dt * nsteps};
  return out;
}

}  // namespace circleflow
