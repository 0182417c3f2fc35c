#pragma once

// Dense double-precision inner loops used by numerics. Each kernel has a
// scalar reference implementation plus SIMD variants; the variant is picked
// once at startup from the CPU's capabilities (override: EFFRES_SIMD=scalar).

#include <cstddef>
#include <span>
#include <string_view>

namespace effres::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum of x[i]^2 * w[i]
  double (*weighted_sum_sq)(const double* x, const double* w, std::size_t n);
};

/// True when the variant was compiled in and the running CPU supports it.
bool available(Isa isa) noexcept;

/// Kernel table for one specific variant; throws if it is unavailable.
const KernelTable& table(Isa isa);

/// The table selected for this process.
const KernelTable& active() noexcept;

/// Replaces the process-wide selection (tests and benchmarks).
void select(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double weighted_sum_sq(std::span<const double> x, std::span<const double> w) {
  return active().weighted_sum_sq(x.data(), w.data(), x.size());
}

namespace detail {
const KernelTable* scalar_table() noexcept;
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
}  // namespace detail

}  // namespace effres::kernels
