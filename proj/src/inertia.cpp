#include "circleflow/inertia.hpp"

#include <cmath>
#include <vector>

#include "circleflow/errors.hpp"
#include "circleflow/fft.hpp"
#include "circleflow/kernels.hpp"

namespace circleflow {

namespace {

// Relative tolerance on mean(m) when inverting the singular operator:
// the momenta paired with minus_dxx are mean-free identities, so drift
// beyond this signals a gauge-inconsistent state, not noise.
constexpr double kSingularTol = 1e-8;

std::vector<double> symbol_table(const InertiaOperator& op, int n) {
  std::vector<double> s(static_cast<std::size_t>(n / 2 + 1));
  for (int k = 0; k <= n / 2; ++k)
    s[static_cast<std::size_t>(k)] = op.symbol(k);
  return s;
}

}  // namespace

InertiaOperator InertiaOperator::sobolev(int r) {
  if (r < 0) throw Error("sobolev order must be non-negative");
  return InertiaOperator(Kind::sobolev_poly, r);
}

double InertiaOperator::symbol(int k) const {
  const double k2 = static_cast<double>(k) * k;
  switch (kind_) {
    case Kind::sobolev_poly: {
      double p = 1.0;  // Horner in k^2: sum_{j=0}^r k^{2j}
      for (int j = 0; j < r_; ++j) p = p * k2 + 1.0;
      return p;
    }
    case Kind::mu_minus_dxx:
      return k == 0 ? 1.0 : k2;
    case Kind::minus_dxx:
      return k2;
  }
  return 0.0;
}

std::string InertiaOperator::name() const {
  switch (kind_) {
    case Kind::sobolev_poly:
      return "sobolev(" + std::to_string(r_) + ")";
    case Kind::mu_minus_dxx:
      return "mu_minus_dxx";
    case Kind::minus_dxx:
      return "minus_dxx";
  }
  return {};
}

GridFunction apply_phi(const InertiaOperator& op, const GridFunction& u) {
  if (!u.finite()) throw Error("non-finite field");
  const int n = u.size();
  auto c = fft::forward(u.values());
  const auto s = symbol_table(op, n);
  kernels::apply_real_symbol(reinterpret_cast<double*>(c.data()), s.data(),
                             c.size());
  return GridFunction::unchecked(u.grid(), fft::inverse(c, n));
}

GridFunction invert_phi(const InertiaOperator& op, const GridFunction& m,
                        double gauge_mean) {
  if (!m.finite()) throw Error("non-finite field");
  if (!std::isfinite(gauge_mean)) throw Error("non-finite gauge mean");
  const int n = m.size();
  auto c = fft::forward(m.values());

  if (!op.invertible()) {
    const double scale =
        kernels::reduce_max_abs(m.values().data(), m.values().size());
    // Absolute floor: identically-zero momenta (rigid rotations, the
    // muburgers acceleration) are all rounding noise and trivially gauge
    // consistent.
    if (std::abs(c[0]) > kSingularTol * scale + 1e-14)
      throw Error("momentum outside the invertible complement: |mean(m)| = " +
                  std::to_string(std::abs(c[0])));
  } else {
    const double implied = c[0].real() / op.symbol(0);
    if (std::abs(gauge_mean - implied) > 1e-8 * (1.0 + std::abs(implied)))
      throw Error("gauge mean inconsistent with momentum mean");
  }

  std::vector<double> rsym(static_cast<std::size_t>(n / 2 + 1));
  rsym[0] = 0.0;
  for (int k = 1; k <= n / 2; ++k)
    rsym[static_cast<std::size_t>(k)] = 1.0 / op.symbol(k);
  kernels::apply_real_symbol(reinterpret_cast<double*>(c.data()), rsym.data(),
                             c.size());
  c[0] = {gauge_mean, 0.0};
  return GridFunction::unchecked(m.grid(), fft::inverse(c, n));
}

}  // namespace circleflow
