#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace effres {

/// Dense square matrix of arbitrary-precision rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t order() const noexcept { return n_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::vector<mpq_class> multiply(std::span<const mpq_class> x) const;

 private:
  std::size_t n_ = 0;
  std::vector<mpq_class> data_;
};

/// Exact solution of B x = rhs. Row denominators are cleared first, then the
/// integer system is reduced by fraction-free (Bareiss) elimination and
/// back-substituted over the rationals. Throws Singular if det B = 0.
std::vector<mpq_class> rational_solve_system(const RationalMatrix& b, std::span<const mpq_class> rhs);

/// (B^{-1})_{ee}, exactly.
mpq_class rational_solve(const RationalMatrix& b, std::size_t e);

/// Scientific-notation rendering of a positive rational with `digits`
/// significant decimal digits (truncated), e.g. "6.27225...e-07".
std::string to_decimal(const mpq_class& value, int digits);

}  // namespace effres
