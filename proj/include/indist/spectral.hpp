#ifndef INDIST_SPECTRAL_HPP_
#define INDIST_SPECTRAL_HPP_

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "indist/types.hpp"

namespace indist {

/// Normalized Gaussian wave packet
///   phi(w) = (2 pi delta^2)^{-1/4} exp(i w t - (w - omega)^2 / (4 delta^2))
/// carrying a polarization label in {0, 1}.
struct GaussianState {
  double omega = 0.0;
  double delta = 1.0;
  double t = 0.0;
  int pol = 0;
};

/// State given by its coefficients in a fixed orthonormal basis.
struct FiniteRankState {
  CVector coeffs;
};

using PureState = std::variant<GaussianState, FiniteRankState>;

/// Detector sensitivity operator Gamma, diagonal in polarization.
struct DetectorModel {
  enum class Kind { kIdeal, kFlat, kGaussianBand, kMatrix };

  Kind kind = Kind::kIdeal;
  double efficiency = 1.0;  // kFlat
  double center = 0.0;      // kGaussianBand: peak * exp(-(w - center)^2 / (2 width^2))
  double width = 1.0;
  double peak = 1.0;
  CMatrix op;  // kMatrix, acts on finite-rank coefficients
  std::array<double, 2> pol_efficiency{1.0, 1.0};  // kFlat, kGaussianBand

  static DetectorModel ideal();
  static DetectorModel flat(double eta);
  static DetectorModel gaussian_band(double center, double width, double peak = 1.0);
  static DetectorModel matrix(CMatrix op);

  /// Gamma evaluated at a single frequency (Gaussian kinds only).
  double response(double omega, int pol = 0) const;

  friend bool operator==(const DetectorModel& a, const DetectorModel& b);
};

/// <a| Gamma |b>.
Complex overlap(const PureState& a, const DetectorModel& gamma, const PureState& b);
/// <a|b>.
Complex overlap(const PureState& a, const PureState& b);

/// Gram matrix G(a, b) = <s_a| Gamma |s_b>, Hermitian by construction.
CMatrix gram_matrix(const std::vector<PureState>& states, const DetectorModel& gamma);

/// Throws ValidationError unless the state is normalized to 1e-8.
void validate_state(const PureState& s);
/// Throws ValidationError unless 0 <= Gamma <= 1.
void validate_detector(const DetectorModel& d);

/// Probability-weighted ensemble of pure states.
struct MixedState {
  struct Term {
    double weight;
    PureState state;
  };
  std::vector<Term> terms;

  static MixedState pure(PureState s);
  int size() const { return static_cast<int>(terms.size()); }
  bool is_pure() const { return terms.size() == 1; }
};

/// Gauss-Hermite rule for the standard normal density: sum w_i f(x_i)
/// approximates E[f(X)], X ~ N(0, 1).
struct QuadratureRule {
  RVector nodes;
  RVector weights;
};

inline constexpr int kDefaultQuadratureNodes = 32;

QuadratureRule gauss_hermite(int nodes);

/// Ensemble obtained by integrating `family(x)` against N(mean, stddev^2)
/// with a Gauss-Hermite rule.
MixedState fluctuating(const std::function<PureState(double)>& family, double mean,
                       double stddev, int nodes = kDefaultQuadratureNodes);

/// Gaussian packet whose arrival time t is normally distributed around
/// base.t with standard deviation sigma_t.
MixedState jittered_arrival(const GaussianState& base, double sigma_t,
                            int nodes = kDefaultQuadratureNodes);

/// g_k = Tr{(sqrt(Gamma) rho sqrt(Gamma))^k}.
double gk_trace(const MixedState& rho, const DetectorModel& gamma, int k);

/// Tr{Gamma rho}.
double detection_probability(const MixedState& rho, const DetectorModel& gamma);

inline constexpr double kRankTolerance = 1e-10;

/// Factorization G = W^dagger W of a Gram matrix.
///
/// Column a of `coefficients` holds state a expressed in an orthonormal
/// basis of the Gamma-weighted span; the basis size is the rank, counting
/// eigenvalues of the Gram matrix above kRankTolerance times the largest.
struct GramFactor {
  CMatrix coefficients;
  RVector singular_values;
  int rank() const { return static_cast<int>(coefficients.rows()); }
};

GramFactor orthonormalize(const std::vector<PureState>& states, const DetectorModel& gamma);
GramFactor factor_gram(const CMatrix& gram);

}  // namespace indist

#endif  // INDIST_SPECTRAL_HPP_
