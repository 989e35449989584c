#include "indist/network.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "indist/errors.hpp"

namespace indist {
namespace {

TEST(Fourier, IsUnitaryWithExpectedEntries) {
  for (int m : {1, 2, 3, 4, 6, 9}) {
    const CMatrix f = fourier(m);
    EXPECT_LT(unitarity_defect(f), 1e-14);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const Complex expected = std::exp(Complex(0.0, 2.0 * std::numbers::pi * j * k / m)) /
                                 std::sqrt(static_cast<double>(m));
        EXPECT_LT(std::abs(f(j, k) - expected), 1e-14);
      }
    }
  }
}

TEST(RandomUnitary, UnitaryAndReproducible) {
  for (int m = 1; m <= 8; ++m) {
    const CMatrix u = random_unitary(m, 42 + m);
    EXPECT_LT(unitarity_defect(u), kInternalUnitarityTol);
    EXPECT_EQ(u, random_unitary(m, 42 + m));
  }
  EXPECT_NE(random_unitary(4, 1), random_unitary(4, 2));
}

TEST(RandomUnitary, EntryMomentsMatchHaar) {
  // For Haar U(M): E|U_ij|^2 = 1/M and E|U_ij|^4 = 2/(M(M+1)).
  const int m = 3;
  const int samples = 4000;
  double second = 0.0;
  double fourth = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double p = std::norm(random_unitary(m, 1000 + s)(1, 2));
    second += p;
    fourth += p * p;
  }
  second /= samples;
  fourth /= samples;
  EXPECT_NEAR(second, 1.0 / m, 0.01);
  EXPECT_NEAR(fourth, 2.0 / (m * (m + 1.0)), 0.01);
}

TEST(Validation, RejectsNonUnitary) {
  CMatrix u = fourier(3);
  u(0, 0) *= 1.001;
  EXPECT_THROW(validate_unitary(u), ValidationError);
  EXPECT_THROW(validate_unitary(CMatrix::Ones(2, 3)), ValidationError);
  EXPECT_NO_THROW(validate_unitary(fourier(3)));
}

TEST(Submatrix, RepeatsRowsAndColumns) {
  const CMatrix u = random_unitary(4, 3);
  const Occupation n{2, 0, 1, 0};
  const Occupation m{0, 1, 0, 2};
  const CMatrix sub = submatrix(u, n, m);
  const int rows[] = {0, 0, 2};
  const int cols[] = {1, 3, 3};
  ASSERT_EQ(sub.rows(), 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(sub(i, j), u(rows[i], cols[j]));
  }
  EXPECT_THROW(submatrix(u, n, Occupation{1, 0, 0, 0}), ArgumentError);
  EXPECT_THROW(submatrix(u, Occupation{1, 1}, m), ArgumentError);
  EXPECT_THROW(submatrix(u, Occupation{-1, 2, 1, 0}, m), ArgumentError);
}

TEST(EnumerateOutputs, CountsAndOrder) {
  const auto outs = enumerate_outputs(4, 3);
  EXPECT_EQ(outs.size(), 20u);
  EXPECT_EQ(outs.front(), (Occupation{3, 0, 0, 0}));
  EXPECT_EQ(outs.back(), (Occupation{0, 0, 0, 3}));
  std::set<Occupation> distinct(outs.begin(), outs.end());
  EXPECT_EQ(distinct.size(), outs.size());
  for (std::size_t i = 0; i < outs.size(); ++i) {
    EXPECT_EQ(total_photons(outs[i]), 3);
    if (i > 0) EXPECT_GT(outs[i - 1], outs[i]);
  }
  for (int m = 1; m <= 6; ++m) {
    for (int n = 0; n <= 5; ++n) {
      EXPECT_EQ(enumerate_outputs(m, n).size(), binomial(m + n - 1, n));
    }
  }
  EXPECT_EQ(enumerate_outputs(2, 2), (std::vector<Occupation>{{2, 0}, {1, 1}, {0, 2}}));
}

TEST(EnumerateOutputs, SizeCap) {
  EXPECT_THROW(enumerate_outputs(20, 20), SizeLimitError);
}

}  // namespace
}  // namespace indist
