#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "bandspec/polynomial.hpp"

using bandspec::ArgumentError;
using P = bandspec::Polynomial<double>;
using C = std::complex<double>;

TEST(PolyAdd, CancellationDropsDegree) {
  const P a{C(1), C(1)};
  const P b{C(-1)};
  const P sum = a + b;
  ASSERT_EQ(sum.degree(), 1u);
  EXPECT_EQ(sum.coefficient(0), C(0));
  EXPECT_EQ(sum.coefficient(1), C(1));
}

TEST(PolyAdd, ZeroIsIdentity) {
  const P p{C(2, 1), C(0), C(-3)};
  EXPECT_EQ(p + P{}, p);
  EXPECT_FALSE(P{}.degree().has_value());
}

TEST(PolyAdd, DisjointSupports) {
  EXPECT_EQ(P::monomial(2) + P::monomial(1), (P{C(0), C(1), C(1)}));
}

TEST(PolyAdd, FullCancellationGivesCanonicalZero) {
  const P p{C(1), C(2)};
  const P z = p - p;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z, P{});
  EXPECT_EQ((P{C(0), C(0)}), P{});
}

TEST(PolyMul, Basics) {
  const C c(0.3, 0.4);
  const P lin{-c, C(1)};
  EXPECT_EQ(lin * P::constant(C(1)), lin);
  EXPECT_EQ((P{C(-1), C(1)} * P{C(1), C(1)}), (P{C(-1), C(0), C(1)}));
  EXPECT_TRUE((P{} * lin).is_zero());
}

TEST(DuranSplit, MonomialClasses) {
  for (std::size_t N = 1; N <= 4; ++N)
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t m = 0; m < N; ++m) {
          const P q = bandspec::duran_split(P::monomial(k * N + r), N, m);
          if (r == m)
            EXPECT_EQ(q, P::monomial(k));
          else
            EXPECT_TRUE(q.is_zero());
        }
}

TEST(DuranSplit, DirectCoefficients) {
  const P p{C(3), C(0), C(2), C(1)};
  EXPECT_EQ(bandspec::duran_split(p, 2, 0), (P{C(3), C(2)}));
  EXPECT_EQ(bandspec::duran_split(p, 2, 1), (P{C(0), C(1)}));
}

TEST(DuranSplit, RejectsBadResidue) {
  EXPECT_THROW(bandspec::duran_split(P{C(1)}, 2, 2), ArgumentError);
  EXPECT_THROW(bandspec::duran_split(P{C(1)}, 0, 0), ArgumentError);
}

TEST(Vectorize, Examples) {
  // lambda^3 + lambda splits into (0, t + 1); components are evaluated at z itself.
  const P p{C(0), C(1), C(0), C(1)};
  const auto row = bandspec::vectorize(p, 2, C(2));
  ASSERT_EQ(row.size(), 2u);
  EXPECT_EQ(row[0], C(0));
  EXPECT_EQ(row[1], C(3));
  const auto squared = bandspec::vectorize(p, 2, C(4));
  EXPECT_EQ(squared[1], C(5));

  const auto one = bandspec::vectorize(P{C(1)}, 3, C(0.7, 2));
  EXPECT_EQ(one[0], C(1));
  EXPECT_EQ(one[1], C(0));
  EXPECT_EQ(one[2], C(0));

  const C z(1.5, -0.5);
  const auto mono = bandspec::vectorize(P::monomial(2 * 3 + 1), 3, z);
  EXPECT_EQ(mono[0], C(0));
  EXPECT_EQ(mono[1], z * z);
  EXPECT_EQ(mono[2], C(0));
}

namespace {

P random_poly(std::mt19937_64& rng, std::size_t degree) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<C> c(degree + 1);
  for (auto& x : c) x = C(u(rng), u(rng));
  return P(std::move(c));
}

}  // namespace

TEST(DuranSplit, ReconstructionIsExact) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const P p = random_poly(rng, 1 + trial);
    for (std::size_t N = 1; N <= 5; ++N) {
      P rebuilt;
      for (std::size_t m = 0; m < N; ++m) {
        const P split = bandspec::duran_split(p, N, m);
        const auto& q = split.coeffs();
        std::vector<C> spread(q.empty() ? 0 : (q.size() - 1) * N + m + 1);
        for (std::size_t n = 0; n < q.size(); ++n) spread[n * N + m] = q[n];
        rebuilt += P(std::move(spread));
      }
      EXPECT_EQ(rebuilt, p);
    }
  }
}

TEST(DuranSplit, Linear) {
  std::mt19937_64 rng(12);
  const P a = random_poly(rng, 17);
  const P b = random_poly(rng, 9);
  const C s(0.25, -2);
  for (std::size_t m = 0; m < 3; ++m) {
    const P lhs = bandspec::duran_split(a + b * s, 3, m);
    const P rhs = bandspec::duran_split(a, 3, m) + bandspec::duran_split(b, 3, m) * s;
    EXPECT_LE(bandspec::max_coefficient_distance(lhs, rhs), 1e-15);
  }
}

TEST(Vectorize, RecombinesToEvaluation) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const P p = random_poly(rng, 1 + static_cast<std::size_t>(trial) % 50);
    C z(4 * u(rng), 4 * u(rng));
    if (std::abs(z) > 4) z *= 4 / std::abs(z);
    for (std::size_t N = 1; N <= 4; ++N) {
      const auto row = bandspec::vectorize(p, N, std::pow(z, static_cast<int>(N)));
      C acc(0);
      for (std::size_t m = 0; m < N; ++m) acc += std::pow(z, static_cast<int>(m)) * row[m];
      const C direct = p(z);
      EXPECT_LE(std::abs(acc - direct), 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}
