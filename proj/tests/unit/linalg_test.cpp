#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "surfmmp/errors.hpp"
#include "surfmmp/exact_linalg.hpp"

namespace surfmmp {
namespace {

using linalg::IntMatrix;

IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> diag(-6, 1);
  std::uniform_int_distribution<int> off(0, 2);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = off(rng) == 2 ? 1 : 0;
    }
  }
  return m;
}

TEST(Linalg, SolveRecoversKnownVector) {
  IntMatrix a(2, 2);
  a(0, 0) = -2;
  a(0, 1) = a(1, 0) = 1;
  a(1, 1) = -2;
  const std::vector<Rational> rhs{Rational(1), Rational(1, 2)};
  const auto x = linalg::solve(a, rhs);
  EXPECT_EQ(-2 * x[0] + x[1], rhs[0]);
  EXPECT_EQ(x[0] - 2 * x[1], rhs[1]);
}

TEST(Linalg, SolveRejectsSingular) {
  IntMatrix a(2, 2);
  a(0, 0) = a(0, 1) = a(1, 0) = a(1, 1) = -1;
  const std::vector<Rational> rhs{Rational(0), Rational(0)};
  EXPECT_THROW(linalg::solve(a, rhs), ArgumentError);
}

TEST(Linalg, DeterminantMatchesPermutationExpansion) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto m = random_symmetric(rng, 1 + t % 6);
    EXPECT_EQ(linalg::determinant(m), testing::leibniz_determinant(m));
  }
}

TEST(Linalg, RationalSolveMatchesIntegerSolve) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_symmetric(rng, 1 + t % 5);
    if (linalg::determinant(m) == 0) {
      continue;
    }
    std::vector<Rational> rhs;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      rhs.emplace_back(static_cast<int>(i) - 2, 3);
    }
    EXPECT_EQ(linalg::solve(m, rhs), linalg::solve(linalg::to_rational(m), rhs));
  }
}

TEST(Linalg, DefinitenessCertificateIsSound) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto m = random_symmetric(rng, 1 + t % 6);
    const auto cert = linalg::negative_definite_certificate(m);
    EXPECT_EQ(cert.negative_definite, testing::nd_by_all_minors(m));
    if (cert.negative_definite) {
      for (std::size_t k = 0; k < cert.leading_minors.size(); ++k) {
        EXPECT_EQ(cert.leading_minors[k] > 0, k % 2 == 1);
      }
    } else {
      Integer q = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          q += cert.witness[i] * m(i, j) * cert.witness[j];
        }
      }
      EXPECT_GE(q, 0);
    }
  }
}

TEST(Linalg, SemidefiniteMatchesMinors) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const auto m = random_symmetric(rng, 1 + t % 6);
    EXPECT_EQ(linalg::is_negative_semidefinite(linalg::to_rational(m)),
              testing::nsd_by_all_minors(m));
  }
}

TEST(Linalg, RankOfProportionalRows) {
  linalg::RationalMatrix m(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    m(0, j) = Rational(static_cast<int>(j) + 1);
    m(1, j) = 2 * m(0, j);
    m(2, j) = Rational(j == 0 ? 1 : 0);
  }
  EXPECT_EQ(linalg::rank(m), 2u);
}

TEST(Linalg, ConeMembershipCertificates) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t dim = 2 + t % 3;
    const std::size_t count = 1 + t % 5;
    std::vector<std::vector<Rational>> gens(count, std::vector<Rational>(dim));
    for (auto& g : gens) {
      for (auto& x : g) {
        x = entry(rng);
      }
    }
    std::vector<Rational> target(dim);
    for (auto& x : target) {
      x = entry(rng);
    }
    const auto r = linalg::cone_membership(gens, target);
    if (r.member) {
      std::vector<Rational> sum(dim, Rational(0));
      for (std::size_t i = 0; i < count; ++i) {
        EXPECT_GE(r.coefficients[i], 0);
        for (std::size_t j = 0; j < dim; ++j) {
          sum[j] += r.coefficients[i] * gens[i][j];
        }
      }
      EXPECT_EQ(sum, target);
    } else {
      for (const auto& g : gens) {
        EXPECT_GE(linalg::dot(r.separator, g), 0);
      }
      EXPECT_LT(linalg::dot(r.separator, target), 0);
    }
  }
}

}  // namespace
}  // namespace surfmmp
