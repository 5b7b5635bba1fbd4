#include "circleflow/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_detail.hpp"

namespace circleflow::kernels {
namespace {

using detail::KernelTable;

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* pick_initial() {
  if (const char* env = std::getenv("CIRCLEFLOW_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &detail::scalar_table();
    if (std::strcmp(env, "avx2") == 0 && avx2_supported())
      return detail::avx2_table();
  }
  return avx2_supported() ? detail::avx2_table() : &detail::scalar_table();
}

std::atomic<const KernelTable*> g_table{pick_initial()};
std::atomic<Backend> g_backend{pick_initial() == &detail::scalar_table()
                                   ? Backend::scalar
                                   : Backend::avx2};

const KernelTable& table() { return *g_table.load(std::memory_order_relaxed); }

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

const char* backend_name(Backend b) {
  return b == Backend::scalar ? "scalar" : "avx2";
}

bool set_backend(Backend b) {
  if (b == Backend::avx2) {
    if (!avx2_supported()) return false;
    g_table.store(detail::avx2_table(), std::memory_order_relaxed);
  } else {
    g_table.store(&detail::scalar_table(), std::memory_order_relaxed);
  }
  g_backend.store(b, std::memory_order_relaxed);
  return true;
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
  table().mul(out, a, b, n);
}

void quadratic_terms(double* out, const double* u, const double* mx,
                     const double* ux, const double* m, double lambda,
                     std::size_t n) {
  table().quadratic_terms(out, u, mx, ux, m, lambda, n);
}

void add_scaled(double* out, const double* y, double c, const double* k,
                std::size_t n) {
  table().add_scaled(out, y, c, k, n);
}

void rk4_combine(double* out, const double* y, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4,
                 std::size_t n) {
  table().rk4_combine(out, y, h, k1, k2, k3, k4, n);
}

void apply_real_symbol(double* z, const double* s, std::size_t nk) {
  table().apply_real_symbol(z, s, nk);
}

void cross3(double* ox, double* oy, double* oz, const double* ax,
            const double* ay, const double* az, const double* bx,
            const double* by, const double* bz, std::size_t n) {
  table().cross3(ox, oy, oz, ax, ay, az, bx, by, bz, n);
}

double reduce_min(const double* a, std::size_t n) {
  return table().reduce_min(a, n);
}

double reduce_max(const double* a, std::size_t n) {
  return table().reduce_max(a, n);
}

double reduce_max_abs(const double* a, std::size_t n) {
  return table().reduce_max_abs(a, n);
}

double reduce_max_abs_diff(const double* a, const double* b, std::size_t n) {
  return table().reduce_max_abs_diff(a, b, n);
}

void trig_eval(const double* c, std::size_t nk, const double* x, double* out,
               std::size_t m) {
  table().trig_eval(c, nk, x, out, m);
}

}  // namespace circleflow::kernels
