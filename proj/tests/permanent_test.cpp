#include "indist/permanent.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "indist/network.hpp"
#include "indist/types.hpp"

namespace indist {
namespace {

CMatrix random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  }
  return a;
}

TEST(Permanent, EmptyMatrixIsOne) {
  const CMatrix empty(0, 0);
  EXPECT_EQ(permanent_ryser(empty), Complex(1.0));
  EXPECT_EQ(permanent_naive(empty), Complex(1.0));
}

TEST(Permanent, TwoByTwo) {
  CMatrix a(2, 2);
  a << Complex(1, 2), Complex(3, -1), Complex(0, 1), Complex(2, 2);
  const Complex expected = a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
  EXPECT_LT(std::abs(permanent_ryser(a) - expected), 1e-14);
  EXPECT_LT(std::abs(permanent_naive(a) - expected), 1e-14);
}

TEST(Permanent, RyserMatchesNaive) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const CMatrix a = random_complex(n, rng);
    const Complex naive = permanent_naive(a);
    const Complex ryser = permanent_ryser(a);
    EXPECT_LE(std::abs(naive - ryser), 1e-10 * std::max(1.0, std::abs(naive))) << "n=" << n;
  }
}

TEST(Permanent, AllOnesIsFactorial) {
  double fact = 1.0;
  for (int n = 1; n <= 12; ++n) {
    fact *= n;
    const RMatrix ones = RMatrix::Ones(n, n);
    EXPECT_NEAR(permanent_ryser(ones), fact, 1e-9 * fact);
  }
}

TEST(Permanent, FourierThree) {
  const CMatrix f3 = fourier(3);
  EXPECT_LT(std::abs(permanent_naive(f3) - Complex(-1.0 / std::sqrt(3.0))), 1e-12);
  EXPECT_LT(std::abs(permanent_ryser(f3) - Complex(-1.0 / std::sqrt(3.0))), 1e-12);
}

TEST(Permanent, BalancedBeamSplitterVanishes) {
  const CMatrix f2 = fourier(2);
  EXPECT_LT(std::abs(permanent_ryser(f2)), 1e-15);
  EXPECT_TRUE(is_permanent_zero(permanent_ryser(f2), f2));
}

TEST(Permanent, InvariantUnderRowAndColumnPermutations) {
  std::mt19937_64 rng(5);
  const CMatrix a = random_complex(6, rng);
  Eigen::PermutationMatrix<Eigen::Dynamic> p(6), q(6);
  p.indices() << 3, 1, 5, 0, 2, 4;
  q.indices() << 5, 4, 3, 2, 1, 0;
  const CMatrix b = p * a * q;
  EXPECT_LT(std::abs(permanent_ryser(a) - permanent_ryser(b)), 1e-10 * std::abs(permanent_ryser(a)));
}

TEST(Permanent, DiagonalScaling) {
  std::mt19937_64 rng(6);
  const CMatrix a = random_complex(5, rng);
  CVector d1(5), d2(5);
  Complex factor(1.0);
  for (int i = 0; i < 5; ++i) {
    d1(i) = Complex(0.5 + i, 0.3 * i);
    d2(i) = Complex(1.0, -0.2 * i);
    factor *= d1(i) * d2(i);
  }
  const CMatrix b = d1.asDiagonal() * a * d2.asDiagonal();
  const Complex expected = factor * permanent_naive(a);
  EXPECT_LT(std::abs(permanent_ryser(b) - expected), 1e-10 * std::abs(expected));
}

TEST(Permanent, LaplaceExpansionMatchesNaive) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 7; ++n) {
    const CMatrix a = random_complex(n, rng);
    const Complex naive = permanent_naive(a);
    for (int k = 0; k <= n; ++k) {
      EXPECT_LT(std::abs(permanent_laplace(a, k) - naive), 1e-10 * std::max(1.0, std::abs(naive)))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(Permanent, ZeroBlockTheorem) {
  // A k x (n-k+1) zero block forces per = 0.
  std::mt19937_64 rng(9);
  CMatrix a = random_complex(5, rng);
  a.block(0, 0, 2, 4).setZero();
  EXPECT_TRUE(is_permanent_zero(permanent_ryser(a), a));
}

TEST(Permanent, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(10);
  const CMatrix a = random_complex(16, rng) / 4.0;
  const Complex one = permanent_ryser(a, 1);
  const Complex four = permanent_ryser(a, 4);
  EXPECT_EQ(one, four);
}

TEST(Permanent, SizeLimits) {
  EXPECT_THROW(permanent_naive(CMatrix::Ones(10, 10)), SizeLimitError);
  EXPECT_THROW(permanent_ryser(CMatrix::Ones(25, 25)), SizeLimitError);
  EXPECT_THROW(permanent_ryser(CMatrix::Ones(2, 3)), ArgumentError);
}

TEST(Permanent, ScaleAwareZeroTest) {
  RMatrix a(2, 2);
  a << 1e3, 1e3, 1e3, 1e3;
  EXPECT_DOUBLE_EQ(permanent_scale(a), 1e6);
  EXPECT_TRUE(is_permanent_zero(1e-7, a));
  EXPECT_FALSE(is_permanent_zero(1e-5, a));
  const RMatrix small = RMatrix::Constant(2, 2, 1e-3);
  EXPECT_DOUBLE_EQ(permanent_scale(small), 1.0);
  EXPECT_FALSE(is_permanent_zero(2e-12, small));
}

}  // namespace
}  // namespace indist
