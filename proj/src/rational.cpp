#include "effres/rational.hpp"

#include <utility>

#include "effres/error.hpp"

namespace effres {

std::vector<mpq_class> RationalMatrix::multiply(std::span<const mpq_class> x) const {
  std::vector<mpq_class> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn((*this)(i, j)) != 0) acc += (*this)(i, j) * x[j];
    }
    y[i] = acc;
  }
  return y;
}

std::vector<mpq_class> rational_solve_system(const RationalMatrix& b, std::span<const mpq_class> rhs) {
  const std::size_t n = b.order();
  if (rhs.size() != n) throw Error(ErrorCode::InvalidArgument, "rhs size mismatch");

  // integer augmented matrix [D B | D rhs], D = diag(lcm of row denominators)
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class row_lcm = rhs[i].get_den();
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), b(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = b(i, j).get_num() * (row_lcm / b(i, j).get_den());
    }
    a[i][n] = rhs[i].get_num() * (row_lcm / rhs[i].get_den());
  }

  // Bareiss: after step k every entry below row k is a k+1 order minor, so the
  // division by the previous pivot is exact.
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(a[swap_row][k]) == 0) ++swap_row;
      if (swap_row == n) throw Error(ErrorCode::Singular, "matrix is singular");
      std::swap(a[k], a[swap_row]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }

  std::vector<mpq_class> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    mpq_class acc(a[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) {
      if (sgn(a[ii][j]) != 0) acc -= mpq_class(a[ii][j]) * x[j];
    }
    x[ii] = acc / mpq_class(a[ii][ii]);
    x[ii].canonicalize();
  }
  return x;
}

mpq_class rational_solve(const RationalMatrix& b, std::size_t e) {
  if (e >= b.order()) throw Error(ErrorCode::InvalidArgument, "index out of range");
  std::vector<mpq_class> rhs(b.order(), mpq_class(0));
  rhs[e] = 1;
  return rational_solve_system(b, rhs)[e];
}

std::string to_decimal(const mpq_class& value, int digits) {
  if (sgn(value) == 0) return "0";
  if (digits < 1) digits = 1;
  const bool negative = sgn(value) < 0;
  const mpq_class mag = abs(value);

  // find e with 10^e <= mag < 10^(e+1)
  long exponent = static_cast<long>(mpz_sizeinbase(mag.get_num().get_mpz_t(), 10)) -
                  static_cast<long>(mpz_sizeinbase(mag.get_den().get_mpz_t(), 10));
  auto power = [](long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? mpq_class(1, p) : mpq_class(p);
  };
  while (mag < power(exponent)) --exponent;
  while (mag >= power(exponent + 1)) ++exponent;

  const mpq_class scaled = mag * power(digits - 1 - exponent);
  const mpz_class truncated = scaled.get_num() / scaled.get_den();
  std::string s = truncated.get_str();
  std::string out = negative ? "-" : "";
  out += s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += "e";
  out += exponent < 0 ? "-" : "+";
  const long ae = exponent < 0 ? -exponent : exponent;
  if (ae < 10) out += "0";
  out += std::to_string(ae);
  return out;
}

}  // namespace effres
