#include "indist/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "indist/errors.hpp"

namespace indist {
namespace {

Complex amplitude(const GaussianState& s, double w) {
  const double pref = std::pow(2.0 * std::numbers::pi * s.delta * s.delta, -0.25);
  const double env = std::exp(-(w - s.omega) * (w - s.omega) / (4.0 * s.delta * s.delta));
  return std::polar(pref * env, w * s.t);
}

// Adaptive Gauss-Kronrod over the real line.
Complex numeric_overlap(const GaussianState& a, const DetectorModel& g, const GaussianState& b) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double w, bool imag) {
    const Complex v = std::conj(amplitude(a, w)) * g.response(w, a.pol) * amplitude(b, w);
    return imag ? v.imag() : v.real();
  };
  const double lo = std::min(a.omega, b.omega) - 14.0 * std::max(a.delta, b.delta);
  const double hi = std::max(a.omega, b.omega) + 14.0 * std::max(a.delta, b.delta);
  double err = 0.0;
  const double re = gauss_kronrod<double, 61>::integrate([&](double w) { return integrand(w, false); },
                                                         lo, hi, 25, 1e-14, &err);
  const double im = gauss_kronrod<double, 61>::integrate([&](double w) { return integrand(w, true); },
                                                         lo, hi, 25, 1e-14, &err);
  return {re, im};
}

TEST(GaussianOverlap, MatchesNumericalQuadrature) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<DetectorModel> detectors = {
      DetectorModel::ideal(), DetectorModel::flat(0.7),
      DetectorModel::gaussian_band(0.3, 0.8, 0.9), DetectorModel::gaussian_band(-1.0, 2.5, 1.0)};
  for (int trial = 0; trial < 20; ++trial) {
    const GaussianState a{u(rng), 0.8 + 0.4 * u(rng), 2.0 * u(rng), 0};
    const GaussianState b{u(rng), 0.8 + 0.4 * u(rng), 2.0 * u(rng), 0};
    for (const auto& d : detectors) {
      const Complex closed = overlap(a, d, b);
      const Complex numeric = numeric_overlap(a, d, b);
      EXPECT_LT(std::abs(closed - numeric), 1e-10) << "trial " << trial;
    }
  }
}

TEST(GaussianOverlap, DelayedCopies) {
  const double omega = 1.7;
  const double delta = 0.6;
  for (double tau : {0.0, 0.5, 1.0, 3.0}) {
    const GaussianState a{omega, delta, 0.2, 0};
    const GaussianState b{omega, delta, 0.2 + tau, 0};
    const Complex expected =
        std::polar(std::exp(-delta * delta * tau * tau / 2.0), omega * tau);
    EXPECT_LT(std::abs(overlap(a, b) - expected), 1e-14);
  }
}

TEST(GaussianOverlap, NormalizedAndPolarizationOrthogonal) {
  const GaussianState a{0.4, 1.3, -2.0, 0};
  GaussianState b = a;
  b.pol = 1;
  EXPECT_NEAR(overlap(a, a).real(), 1.0, 1e-14);
  EXPECT_EQ(overlap(a, b), Complex(0.0));
  DetectorModel d = DetectorModel::flat(0.5);
  d.pol_efficiency = {1.0, 0.2};
  EXPECT_NEAR(overlap(b, d, b).real(), 0.1, 1e-14);
}

TEST(FiniteRank, OverlapWithMatrixDetector) {
  CVector a(2), b(2);
  a << Complex(1, 0), Complex(0, 1);
  b << Complex(0.5, 0.5), Complex(1, 0);
  a.normalize();
  b.normalize();
  CMatrix op(2, 2);
  op << 0.5, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  const Complex expected = (a.adjoint() * op * b)(0, 0);
  EXPECT_LT(std::abs(overlap(FiniteRankState{a}, DetectorModel::matrix(op), FiniteRankState{b}) -
                     expected),
            1e-15);
  EXPECT_LT(std::abs(overlap(FiniteRankState{a}, DetectorModel::flat(0.4), FiniteRankState{b}) -
                     0.4 * a.dot(b)),
            1e-15);
}

TEST(Overlap, IncompatibleKindsThrow) {
  const PureState g = GaussianState{};
  const PureState f = FiniteRankState{CVector::Ones(1)};
  EXPECT_THROW(overlap(g, f), ArgumentError);
  EXPECT_THROW(overlap(g, DetectorModel::matrix(CMatrix::Identity(1, 1)), g), ArgumentError);
  EXPECT_THROW(overlap(f, DetectorModel::gaussian_band(0, 1), f), ArgumentError);
}

TEST(Validation, StatesAndDetectors) {
  EXPECT_THROW(validate_state(FiniteRankState{CVector::Ones(2)}), ValidationError);
  EXPECT_THROW(validate_state(GaussianState{0.0, -1.0, 0.0, 0}), ValidationError);
  EXPECT_THROW(validate_detector(DetectorModel::flat(1.2)), ValidationError);
  EXPECT_THROW(validate_detector(DetectorModel::gaussian_band(0.0, 1.0, 1.5)), ValidationError);
  CMatrix bad(2, 2);
  bad << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(validate_detector(DetectorModel::matrix(bad)), ValidationError);
  EXPECT_THROW(validate_detector(DetectorModel::matrix(2.0 * CMatrix::Identity(2, 2))),
               ValidationError);
  EXPECT_NO_THROW(validate_detector(DetectorModel::matrix(0.5 * CMatrix::Identity(2, 2))));
}

TEST(GaussHermite, MomentsOfStandardNormal) {
  for (int nodes : {8, 32, 64}) {
    const QuadratureRule rule = gauss_hermite(nodes);
    EXPECT_NEAR(rule.weights.sum(), 1.0, 1e-13);
    double double_factorial = 1.0;
    for (int k = 0; 2 * k < std::min(2 * nodes, 24); ++k) {
      if (k > 0) double_factorial *= 2 * k - 1;
      double moment = 0.0;
      double odd = 0.0;
      for (int i = 0; i < nodes; ++i) {
        moment += rule.weights(i) * std::pow(rule.nodes(i), 2 * k);
        odd += rule.weights(i) * std::pow(rule.nodes(i), 2 * k + 1);
      }
      EXPECT_NEAR(moment, double_factorial, 1e-10 * double_factorial) << nodes << " " << k;
      EXPECT_NEAR(odd, 0.0, 1e-9 * double_factorial);
    }
  }
}

TEST(MixedState, JitterEnsembleIsNormalized) {
  const MixedState rho = jittered_arrival(GaussianState{0.0, 1.0, 0.5, 0}, 0.7);
  EXPECT_EQ(rho.size(), kDefaultQuadratureNodes);
  double total = 0.0;
  double mean = 0.0;
  for (const auto& t : rho.terms) {
    total += t.weight;
    mean += t.weight * std::get<GaussianState>(t.state).t;
  }
  EXPECT_NEAR(total, 1.0, 1e-13);
  EXPECT_NEAR(mean, 0.5, 1e-13);
  EXPECT_NEAR(detection_probability(rho, DetectorModel::ideal()), 1.0, 1e-13);
}

TEST(GkTrace, PureStateIsPowerOfDetectionProbability) {
  const GaussianState s{0.2, 0.9, 0.0, 0};
  const DetectorModel band = DetectorModel::gaussian_band(0.5, 1.1, 0.8);
  const double p = overlap(s, band, s).real();
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(gk_trace(MixedState::pure(s), band, k), std::pow(p, k), 1e-14);
  }
}

TEST(GkTrace, QuadratureConverges) {
  const GaussianState base{0.0, 1.0, 0.0, 0};
  for (double jitter : {0.3, 1.0}) {
    for (int k = 1; k <= 5; ++k) {
      const double g32 = gk_trace(jittered_arrival(base, jitter, 32), DetectorModel::ideal(), k);
      const double g64 = gk_trace(jittered_arrival(base, jitter, 64), DetectorModel::ideal(), k);
      EXPECT_LT(std::abs(g32 - g64), 1e-8) << "jitter " << jitter << " k " << k;
    }
  }
}

TEST(GkTrace, WideJitterNeedsMoreNodes) {
  const GaussianState base{0.0, 1.0, 0.0, 0};
  const double g32 = gk_trace(jittered_arrival(base, 2.0, 32), DetectorModel::ideal(), 2);
  const double g64 = gk_trace(jittered_arrival(base, 2.0, 64), DetectorModel::ideal(), 2);
  EXPECT_GT(std::abs(g32 - g64), 1e-8);
  for (int k = 1; k <= 5; ++k) {
    const double g128 = gk_trace(jittered_arrival(base, 2.0, 128), DetectorModel::ideal(), k);
    const double g256 = gk_trace(jittered_arrival(base, 2.0, 256), DetectorModel::ideal(), k);
    EXPECT_LT(std::abs(g128 - g256), 1e-8) << k;
  }
}

TEST(GkTrace, ThreeCycleOfJitteredPackets) {
  // E exp(-(d/2) sum (t_i - t_{i+1})^2) over a 3-cycle of iid N(0, s^2)
  // arrival times is 1 / (1 + 3 d s^2).
  const GaussianState base{0.0, 1.0, 0.0, 0};
  const double g3 = gk_trace(jittered_arrival(base, 0.8, 64), DetectorModel::ideal(), 3);
  EXPECT_NEAR(g3, 1.0 / (1.0 + 3.0 * 0.64), 1e-12);
}

TEST(Orthonormalize, ReproducesGramMatrix) {
  std::vector<PureState> states;
  for (int i = 0; i < 5; ++i) states.emplace_back(GaussianState{0.3 * i, 1.0, 0.4 * i, 0});
  const DetectorModel band = DetectorModel::gaussian_band(0.4, 0.7, 0.9);
  const GramFactor f = orthonormalize(states, band);
  const CMatrix g = gram_matrix(states, band);
  EXPECT_LT((f.coefficients.adjoint() * f.coefficients - g).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(f.rank(), 5);
}

TEST(Orthonormalize, RankOfDependentStates) {
  CVector a(3), b(3);
  a << 1, 0, 0;
  b << 0, Complex(0, 1), 0;
  const CVector c = (a + b) / std::sqrt(2.0);
  const std::vector<PureState> states = {FiniteRankState{a}, FiniteRankState{b},
                                         FiniteRankState{c}, FiniteRankState{a}};
  const GramFactor f = orthonormalize(states, DetectorModel::ideal());
  EXPECT_EQ(f.rank(), 2);
  const CMatrix g = gram_matrix(states, DetectorModel::ideal());
  EXPECT_LT((f.coefficients.adjoint() * f.coefficients - g).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace indist
