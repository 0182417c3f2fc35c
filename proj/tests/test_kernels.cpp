#include <cmath>
#include <vector>

#include "doctest.h"
#include "effres/kernels.hpp"
#include "effres/numerics.hpp"
#include "effres/random.hpp"
#include "support.hpp"

using namespace effres;
namespace k = effres::kernels;

TEST_CASE("scalar kernels on hand-computed inputs") {
  const k::KernelTable& s = k::table(k::Isa::Scalar);
  const double x[] = {1, 2, 3};
  const double y[] = {4, 5, 6};
  CHECK(s.dot(x, y, 3) == 32.0);
  double z[] = {1, 1, 1};
  s.axpy(2.0, x, z, 3);
  CHECK(z[0] == 3.0);
  CHECK(z[2] == 7.0);
  const double w[] = {3, 4};
  CHECK(s.weighted_sum_sq(x, w, 2) == 19.0);
  CHECK(s.dot(x, y, 0) == 0.0);
}

TEST_CASE("every available variant matches the scalar reference") {
  const k::KernelTable& ref = k::table(k::Isa::Scalar);
  Rng rng(7);
  for (k::Isa isa : {k::Isa::Avx2, k::Isa::Neon}) {
    if (!k::available(isa)) {
      CHECK_THROWS(k::table(isa));
      continue;
    }
    const k::KernelTable& t = k::table(isa);
    CHECK(t.isa == isa);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 67, 257}) {
      auto x = testing::random_vector(n, rng);
      auto y = testing::random_vector(n, rng);
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
      CHECK(std::abs(t.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <= 1e-14 * (scale + 1));
      double wscale = 0.0;
      for (std::size_t i = 0; i < n; ++i) wscale += std::abs(x[i] * x[i] * y[i]);
      CHECK(std::abs(t.weighted_sum_sq(x.data(), y.data(), n) - ref.weighted_sum_sq(x.data(), y.data(), n)) <=
            1e-14 * (wscale + 1));
      auto a = y, b = y;
      t.axpy(-0.7, x.data(), a.data(), n);
      ref.axpy(-0.7, x.data(), b.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * (std::abs(x[i]) + std::abs(y[i]) + 1));
    }
  }
}

TEST_CASE("Schur elimination agrees across kernel variants") {
  const k::Isa before = k::active().isa;
  Rng rng(11);
  SymmetricMatrix m(40);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (rng.uniform() < 0.3) {
        const double w = rng.uniform(0.5, 2.0);
        m.at(i, j) -= w;
        m.at(i, i) += w;
        m.at(j, j) += w;
      }
    }
    if (i > 0) {  // keep it connected
      m.at(i, i - 1) -= 1.0;
      m.at(i, i) += 1.0;
      m.at(i - 1, i - 1) += 1.0;
    }
  }
  const std::vector<std::size_t> keep{0, 5, 17, 39};
  k::select(k::Isa::Scalar);
  const SymmetricMatrix ref = schur_block(m, keep);
  for (k::Isa isa : {k::Isa::Avx2, k::Isa::Neon}) {
    if (!k::available(isa)) continue;
    k::select(isa);
    const SymmetricMatrix got = schur_block(m, keep);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) CHECK(got(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-12));
    }
  }
  k::select(before);
  CHECK(k::active().isa == before);
}
