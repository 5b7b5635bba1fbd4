#include "circleflow/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "circleflow/errors.hpp"

namespace circleflow::fft {
namespace {

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using fftw_ptr = std::unique_ptr<T, FftwDeleter>;

fftw_ptr<double> alloc_real(int n) {
  return fftw_ptr<double>(fftw_alloc_real(static_cast<std::size_t>(n)));
}

fftw_ptr<fftw_complex> alloc_complex(int nk) {
  return fftw_ptr<fftw_complex>(
      fftw_alloc_complex(static_cast<std::size_t>(nk)));
}

// Cached plans per size. The prototype buffers stay alive so new-array
// execution always sees the alignment the plan was built for (fftw_malloc
// alignment is uniform, which also keeps codelet choice deterministic).
struct PlanSet {
  fftw_ptr<double> proto_real;
  fftw_ptr<fftw_complex> proto_complex;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit PlanSet(int n)
      : proto_real(alloc_real(n)), proto_complex(alloc_complex(n / 2 + 1)) {
    r2c = fftw_plan_dft_r2c_1d(n, proto_real.get(), proto_complex.get(),
                               FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_1d(n, proto_complex.get(), proto_real.get(),
                               FFTW_ESTIMATE);
    if (!r2c || !c2r) throw Error("fftw plan creation failed");
  }

  ~PlanSet() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }

  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;
};

const PlanSet& plans_for(int n) {
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<PlanSet>>* cache =
      new std::map<int, std::unique_ptr<PlanSet>>();
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache->find(n);
  if (it == cache->end())
    it = cache->emplace(n, std::make_unique<PlanSet>(n)).first;
  return *it->second;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const double> f) {
  const int n = static_cast<int>(f.size());
  const int nk = n / 2 + 1;
  const PlanSet& p = plans_for(n);

  auto in = alloc_real(n);
  auto out = alloc_complex(nk);
  std::memcpy(in.get(), f.data(), sizeof(double) * f.size());
  fftw_execute_dft_r2c(p.r2c, in.get(), out.get());

  std::vector<std::complex<double>> c(static_cast<std::size_t>(nk));
  const double scale = 1.0 / n;
  for (int k = 0; k < nk; ++k) {
    c[static_cast<std::size_t>(k)] = {out.get()[k][0] * scale,
                                      out.get()[k][1] * scale};
  }
  return c;
}

std::vector<double> inverse(std::span<const std::complex<double>> c, int n) {
  const int nk = n / 2 + 1;
  if (static_cast<int>(c.size()) != nk)
    throw Error("half spectrum length does not match grid size");
  const PlanSet& p = plans_for(n);

  auto in = alloc_complex(nk);
  auto out = alloc_real(n);
  for (int k = 0; k < nk; ++k) {
    in.get()[k][0] = c[static_cast<std::size_t>(k)].real();
    in.get()[k][1] = c[static_cast<std::size_t>(k)].imag();
  }
  fftw_execute_dft_c2r(p.c2r, in.get(), out.get());

  return std::vector<double>(out.get(), out.get() + n);
}

}  // namespace circleflow::fft
