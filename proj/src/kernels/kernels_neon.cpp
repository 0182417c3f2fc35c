#include <arm_neon.h>

#include "effres/kernels.hpp"

namespace effres::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double weighted_sum_sq_neon(const double* x, const double* w, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t xv = vld1q_f64(x + i);
    acc = vfmaq_f64(acc, vmulq_f64(xv, xv), vld1q_f64(w + i));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += x[i] * x[i] * w[i];
  return total;
}

const KernelTable kNeon{Isa::Neon, &dot_neon, &axpy_neon, &weighted_sum_sq_neon};

}  // namespace

const KernelTable* detail::neon_table() noexcept { return &kNeon; }

}  // namespace effres::kernels
