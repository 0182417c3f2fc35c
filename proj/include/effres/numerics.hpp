#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace effres {

/// Dense real symmetric matrix stored as its packed lower triangle.
/// Row i occupies entries (i,0) .. (i,i) contiguously.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * (n + 1) / 2, 0.0) {}

  static SymmetricMatrix identity(std::size_t n);
  /// Uses the lower triangle of `dense`.
  static SymmetricMatrix from_dense(const Eigen::MatrixXd& dense);

  std::size_t order() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return i >= j ? data_[offset(i) + j] : data_[offset(j) + i];
  }
  double& at(std::size_t i, std::size_t j) noexcept {
    return i >= j ? data_[offset(i) + j] : data_[offset(j) + i];
  }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + offset(i), i + 1}; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + offset(i), i + 1}; }

  Eigen::MatrixXd to_dense() const;
  std::vector<double> multiply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;
  double max_abs() const noexcept;
  /// All eigenvalues >= -rel_tol * max |eigenvalue|.
  bool is_psd(double rel_tol = 1e-9) const;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  static std::size_t offset(std::size_t i) noexcept { return i * (i + 1) / 2; }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Relative eigenvalue cutoff used to decide numerical rank.
inline constexpr double kRankCutoff = 1e-9;

/// Moore-Penrose pseudo-inverse via symmetric eigendecomposition. Eigenvalues
/// with |lambda| <= kRankCutoff * max |lambda| are treated as zero.
SymmetricMatrix pinv(const SymmetricMatrix& m);

/// Schur complement L_K - L_M^T L_N^{-1} L_M onto the indices `keep`, returned
/// in the order given. Non-kept indices are eliminated one pivot at a time in
/// minimum-degree order. Throws SingularBlock when a pivot vanishes.
SymmetricMatrix schur_block(const SymmetricMatrix& laplacian, std::span<const std::size_t> keep);

/// min over y of [y;x]^T L [y;x], where x is fixed on `keep` (same order) and
/// y ranges over the remaining indices. Solved directly with a dense Cholesky
/// factorisation of L_N, independently of schur_block.
double min_quadratic_extension(const SymmetricMatrix& laplacian, std::span<const std::size_t> keep,
                               std::span<const double> x);

}  // namespace effres
