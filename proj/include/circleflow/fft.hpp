#pragma once

#include <complex>
#include <span>
#include <vector>

// Thin wrapper around FFTW for 1-d real transforms. Plans are cached per
// size behind a mutex (FFTW planning is not thread-safe); execution runs on
// per-call buffers, so concurrent transforms are safe.

namespace circleflow::fft {

/// Normalized half spectrum of a real n-point sequence:
///   c[k] = (1/n) * sum_j f_j e^{-i k x_j},  k = 0..n/2,
/// so c[0] is the grid mean and f(x) = sum_k c_k e^{ikx} over the hermitian
/// extension.
std::vector<std::complex<double>> forward(std::span<const double> f);

/// Inverse of forward(): reconstruct n real samples from the normalized half
/// spectrum (nk = n/2 + 1 entries).
std::vector<double> inverse(std::span<const std::complex<double>> c, int n);

}  // namespace circleflow::fft
