#include "effres/kernels.hpp"

namespace effres::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double weighted_sum_sq_scalar(const double* x, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i] * w[i];
  return acc;
}

const KernelTable kScalar{Isa::Scalar, &dot_scalar, &axpy_scalar, &weighted_sum_sq_scalar};

}  // namespace

const KernelTable* detail::scalar_table() noexcept { return &kScalar; }

}  // namespace effres::kernels
