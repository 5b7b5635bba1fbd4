#include "circleflow/spectral.hpp"

#include <cmath>
#include <complex>

#include "circleflow/errors.hpp"
#include "circleflow/fft.hpp"
#include "circleflow/kernels.hpp"

namespace circleflow {

GridFunction deriv(const GridFunction& f, int order) {
  if (order < 1 || order > 4)
    throw Error("derivative order must be in [1,4], got " +
                std::to_string(order));
  if (!f.finite()) throw Error("non-finite field");

  const int n = f.size();
  auto c = fft::forward(f.values());
  const int ny = n / 2;
  for (int k = 0; k <= ny; ++k) {
    double kp = 1.0;
    for (int j = 0; j < order; ++j) kp *= k;
    std::complex<double> s;
    switch (order % 4) {
      case 0: s = {kp, 0.0}; break;
      case 1: s = {0.0, kp}; break;
      case 2: s = {-kp, 0.0}; break;
      default: s = {0.0, -kp}; break;
    }
    auto& ck = c[static_cast<std::size_t>(k)];
    ck = (k == ny && order % 2 == 1) ? std::complex<double>(0.0, 0.0)
                                     : ck * s;
  }
  return GridFunction::unchecked(f.grid(), fft::inverse(c, n));
}

GridFunction dealias(const GridFunction& f) {
  const int n = f.size();
  const int cut = f.grid().dealias_cutoff();
  auto c = fft::forward(f.values());
  for (int k = cut + 1; k <= n / 2; ++k)
    c[static_cast<std::size_t>(k)] = {0.0, 0.0};
  return GridFunction::unchecked(f.grid(), fft::inverse(c, n));
}

Interpolant::Interpolant(const GridFunction& f) : n_(f.size()) {
  auto c = fft::forward(f.values());
  coeff_.resize(2 * c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    coeff_[2 * k] = c[k].real();
    coeff_[2 * k + 1] = c[k].imag();
  }
}

double Interpolant::operator()(double x) const {
  double out;
  eval(std::span<const double>(&x, 1), std::span<double>(&out, 1));
  return out;
}

void Interpolant::eval(std::span<const double> x,
                       std::span<double> out) const {
  for (double t : x)
    if (!std::isfinite(t)) throw Error("non-finite interpolation target");
  kernels::trig_eval(coeff_.data(), coeff_.size() / 2, x.data(), out.data(),
                     x.size());
}

std::vector<double> Interpolant::eval(std::span<const double> x) const {
  std::vector<double> out(x.size());
  eval(x, std::span<double>(out));
  return out;
}

std::vector<double> interp(const GridFunction& f,
                           std::span<const double> targets) {
  return Interpolant(f).eval(targets);
}

double interp_at(const GridFunction& f, double x) { return Interpolant(f)(x); }

}  // namespace circleflow
