#include "indist/bosonsampling.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "indist/errors.hpp"

namespace indist {
namespace {

TEST(BosonSampling, GammaFromEta) {
  EXPECT_DOUBLE_EQ(gamma_from_eta(0.0), 0.0);
  EXPECT_NEAR(gamma_from_eta(0.5), 1.0 / 3.0, 1e-15);
  const BosonSamplingParams p = BosonSamplingParams::from_widths(3, 2.0, 0.25);
  EXPECT_NEAR(p.gamma, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.eta(), 0.5, 1e-14);
}

TEST(BosonSampling, ClosedFormGk) {
  EXPECT_NEAR(gk_closed(0.5, 2), 0.577350, 5e-7);
  EXPECT_DOUBLE_EQ(gk_closed(0.5, 1), 1.0);
  EXPECT_DOUBLE_EQ(gk_closed(0.0, 4), 1.0);
}

TEST(BosonSampling, KnownPurities) {
  const PurityResult two = purity_closed({2, 0.5});
  EXPECT_NEAR(two.trace, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(two.purity, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(purity_closed({3, 0.2}).trace, 0.67204, 5e-6);
  EXPECT_NEAR(purity_closed({5, 0.0}).trace, 1.0, 1e-15);
}

TEST(BosonSampling, ClosedMatchesCycleIndex) {
  for (int n = 1; n <= 10; ++n) {
    for (double gamma : {0.0, 0.05, 0.3, 0.7, 0.95}) {
      const PurityResult closed = purity_closed({n, gamma});
      const PurityResult direct = purity_direct({n, gamma});
      EXPECT_NEAR(closed.trace, direct.trace, 1e-12 * closed.trace) << n << " " << gamma;
    }
  }
  EXPECT_THROW(purity_direct({11, 0.3}), SizeLimitError);
}

TEST(BosonSampling, ExactGkMatchesQuadrature) {
  const double d_omega = 1.0;
  for (double d_tau : {0.2, 0.7, 2.0}) {
    const double gamma = gamma_from_eta(d_omega * d_tau);
    const MixedState rho = arrival_time_state(d_omega, d_tau, 160);
    for (int k = 1; k <= 5; ++k) {
      EXPECT_NEAR(gk_trace(rho, DetectorModel::ideal(), k), gk_exact(gamma, k), 1e-10)
          << d_tau << " " << k;
    }
  }
}

TEST(BosonSampling, ClosedGkMatchesQuadratureUpToTwoCycles) {
  for (double gamma : {0.1, 0.5, 0.9}) {
    const BosonSamplingParams p{2, gamma};
    const MixedState rho = arrival_time_state(1.0, p.eta(), 160);
    for (int k = 1; k <= 2; ++k) {
      EXPECT_NEAR(gk_trace(rho, DetectorModel::ideal(), k), gk_closed(gamma, k), 1e-10);
      EXPECT_NEAR(gk_exact(gamma, k), gk_closed(gamma, k), 1e-15);
    }
  }
}

TEST(BosonSampling, GkIsSubmultiplicative) {
  for (double gamma : {0.1, 0.5, 0.9}) {
    for (int k = 1; k <= 6; ++k) {
      for (int m = 1; m <= 6; ++m) {
        EXPECT_LE(gk_closed(gamma, k + m), gk_closed(gamma, k) * gk_closed(gamma, m) + 1e-15);
      }
    }
  }
}

TEST(BosonSampling, JEntryIsProductOverCycles) {
  const BosonSamplingParams p{4, 0.4};
  CycleType ct;
  ct.counts = {1, 0, 1};  // a fixed point and a 3-cycle
  EXPECT_NEAR(j_entry(p, ct), gk_closed(0.4, 1) * gk_closed(0.4, 3), 1e-15);
}

TEST(BosonSampling, SmallGammaExpansion) {
  for (int n = 2; n <= 12; ++n) {
    const SmallGammaCheck c = small_gamma_expansion_check(BosonSamplingParams::from_eta(n, 0.01));
    EXPECT_LT(std::abs(c.coefficient), 10.0) << n;
    EXPECT_NEAR(c.trace, c.approximation, 10.0 * 1e-8 * n * n);
  }
  EXPECT_THROW(small_gamma_expansion_check(BosonSamplingParams::from_eta(3, 0.1)), DomainError);
}

TEST(BosonSampling, PurityDecreasesWithGammaAndN) {
  const auto rows = purity_curve({2, 3, 4, 6}, {0.1, 0.3, 0.6, 0.9});
  ASSERT_EQ(rows.size(), 16u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i % 4 != 0) {
      EXPECT_LT(rows[i].trace, rows[i - 1].trace);
      EXPECT_EQ(rows[i].gamma, rows[i - 1].gamma);
    }
    if (i >= 4) EXPECT_LT(rows[i].trace, rows[i - 4].trace);
  }
}

TEST(BosonSampling, DomainErrors) {
  EXPECT_THROW(purity_closed({3, 1.0}), DomainError);
  EXPECT_THROW(purity_closed({3, -0.1}), DomainError);
  EXPECT_THROW(gk_closed(1.2, 2), DomainError);
  EXPECT_TRUE(std::isnan(purity_closed({1, 0.3}).purity));
}

}  // namespace
}  // namespace indist
