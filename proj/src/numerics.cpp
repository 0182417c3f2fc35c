#include "effres/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "effres/error.hpp"
#include "effres/kernels.hpp"

namespace effres {

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

SymmetricMatrix SymmetricMatrix::from_dense(const Eigen::MatrixXd& dense) {
  const auto n = static_cast<std::size_t>(dense.rows());
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      m.at(i, j) = dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return m;
}

Eigen::MatrixXd SymmetricMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      dense(i, j) = v;
      dense(j, i) = v;
    }
  }
  return dense;
}

std::vector<double> SymmetricMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    auto r = row(i);
    // lower part of row i, then the transposed contribution above the diagonal
    y[i] += kernels::dot(r, x.subspan(0, i + 1));
    kernels::axpy(x[i], r.subspan(0, i), std::span<double>(y.data(), i));
  }
  return y;
}

double SymmetricMatrix::quadratic_form(std::span<const double> x) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    auto r = row(i);
    total += x[i] * (2.0 * kernels::dot(r.subspan(0, i), x.subspan(0, i)) + r[i] * x[i]);
  }
  return total;
}

double SymmetricMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool SymmetricMatrix::is_psd(double rel_tol) const {
  if (n_ == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double scale = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  return ev.minCoeff() >= -rel_tol * scale;
}

SymmetricMatrix pinv(const SymmetricMatrix& m) {
  const std::size_t n = m.order();
  if (n == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.to_dense());
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const Eigen::MatrixXd& vecs = solver.eigenvectors();
  const double scale = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  if (scale > 0.0) {
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i)) > kRankCutoff * scale) inv(i) = 1.0 / ev(i);
    }
  }
  return SymmetricMatrix::from_dense(vecs * inv.asDiagonal() * vecs.transpose());
}

SymmetricMatrix schur_block(const SymmetricMatrix& laplacian, std::span<const std::size_t> keep) {
  const std::size_t n = laplacian.order();
  if (keep.empty()) throw Error(ErrorCode::InvalidArgument, "schur_block needs a nonempty index set");
  std::vector<char> kept(n, 0);
  for (std::size_t k : keep) {
    if (k >= n) throw Error(ErrorCode::InvalidArgument, "schur_block index out of range");
    if (kept[k]) throw Error(ErrorCode::InvalidArgument, "schur_block index repeated");
    kept[k] = 1;
  }

  SymmetricMatrix work = laplacian;
  double diag_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(work(i, i)));
  const double pivot_floor = 1e-12 * std::max(diag_scale, std::numeric_limits<double>::min());

  std::vector<char> active(n, 1);
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) pending.push_back(i);
  }

  std::vector<double> column(n, 0.0);
  while (!pending.empty()) {
    // minimum degree among the remaining non-kept indices
    std::size_t best_pos = 0;
    std::size_t best_degree = std::numeric_limits<std::size_t>::max();
    for (std::size_t pos = 0; pos < pending.size(); ++pos) {
      const std::size_t q = pending[pos];
      std::size_t degree = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != q && active[j] && work(q, j) != 0.0) ++degree;
      }
      if (degree < best_degree) {
        best_degree = degree;
        best_pos = pos;
      }
    }
    const std::size_t p = pending[best_pos];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best_pos));

    const double pivot = work(p, p);
    if (!(pivot > pivot_floor)) {
      throw Error(ErrorCode::SingularBlock, "eliminated block is singular (disconnected input?)");
    }
    active[p] = 0;
    for (std::size_t j = 0; j < n; ++j) column[j] = active[j] ? work(j, p) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || column[i] == 0.0) continue;
      kernels::axpy(-column[i] / pivot, std::span<const double>(column.data(), i + 1), work.row(i));
    }
  }

  SymmetricMatrix result(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b <= a; ++b) result.at(a, b) = work(keep[a], keep[b]);
  }
  return result;
}

double min_quadratic_extension(const SymmetricMatrix& laplacian, std::span<const std::size_t> keep,
                               std::span<const double> x) {
  const std::size_t n = laplacian.order();
  if (x.size() != keep.size()) throw Error(ErrorCode::InvalidArgument, "x must match the kept index set");
  std::vector<char> kept(n, 0);
  for (std::size_t k : keep) kept[k] = 1;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) rest.push_back(i);
  }

  std::vector<double> full(n, 0.0);
  for (std::size_t a = 0; a < keep.size(); ++a) full[keep[a]] = x[a];

  if (!rest.empty()) {
    const auto r = static_cast<Eigen::Index>(rest.size());
    Eigen::MatrixXd lnn(r, r);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) {
        lnn(i, j) = laplacian(rest[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)]);
      }
      for (std::size_t a = 0; a < keep.size(); ++a) {
        rhs(i) -= laplacian(rest[static_cast<std::size_t>(i)], keep[a]) * x[a];
      }
    }
    Eigen::LLT<Eigen::MatrixXd> chol(lnn);
    if (chol.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularBlock, "eliminated block is not positive definite");
    }
    const Eigen::VectorXd y = chol.solve(rhs);
    for (Eigen::Index i = 0; i < r; ++i) full[rest[static_cast<std::size_t>(i)]] = y(i);
  }
  return laplacian.quadratic_form(full);
}

}  // namespace effres
