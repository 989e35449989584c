#ifndef INDIST_PROBABILITY_HPP_
#define INDIST_PROBABILITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "indist/jmatrix.hpp"
#include "indist/network.hpp"
#include "indist/spectral.hpp"
#include "indist/types.hpp"

namespace indist {

inline constexpr double kNegativeClampTol = 1e-9;
inline constexpr std::uint64_t kMaxBasisTuples = 1'000'000;

enum class Engine { kJMatrix, kPermanentBasis, kGeneral, kClassical, kIdeal, kOracle };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& name);

struct ProbabilityResult {
  Occupation m;
  double p = 0.0;
  double imag_residual = 0.0;  // |Im| of the quadratic form before taking the real part
  bool clamped = false;        // a tiny negative value was set to zero
};

/// Arbitrary N-photon input: a probability mixture of pure spectral states,
/// each expanded over products of `atoms`,
///   |Phi_t> = sum_a C_t(a) |atom a_0> x ... x |atom a_{N-1}>.
/// Coefficients must be symmetric under permutations of photons that share
/// an input mode.
struct EnsembleInput {
  struct Term {
    double weight = 1.0;
    std::vector<std::pair<std::vector<int>, Complex>> coeffs;
  };
  std::vector<PureState> atoms;
  std::vector<Term> terms;

  /// Product input; every combination of ensemble members becomes a term.
  /// Identical states are merged into one atom.
  static EnsembleInput product(const std::vector<MixedState>& photons);
};

/// sum over sigma1, sigma2 of J(sigma1, sigma2) X*_{sigma1} X_{sigma2},
/// divided by mu(n) mu(m), with X_sigma = prod_a U_{k_sigma(a), l_a}.
ProbabilityResult prob_jmatrix(const JMatrix& j, const CMatrix& u, const Occupation& n,
                               const Occupation& m);

/// (1/mu(m)) sum_j |per(U[n|m] o S(j))|^2, with S built from an orthonormal
/// factorization of each detector's Gram matrix. Needs at most one photon
/// per input mode. Mixed photons are summed over their ensemble members.
ProbabilityResult prob_permanent_basis(const std::vector<MixedState>& photons,
                                       const DetectorBank& bank, const CMatrix& u,
                                       const Occupation& n, const Occupation& m);

/// Weighted sum over ensemble terms of sum_j |sum_a C(a) per(U[n|m] o B(j,a))|^2.
ProbabilityResult prob_general(const EnsembleInput& input, const DetectorBank& bank,
                               const CMatrix& u, const Occupation& n, const Occupation& m);

/// Fully distinguishable photons: per(|U[n|m]|^2) / mu(m).
ProbabilityResult prob_classical(const CMatrix& u, const Occupation& n, const Occupation& m);

/// Fully indistinguishable photons, ideal detectors: |per U[n|m]|^2 / (mu(n) mu(m)).
ProbabilityResult prob_ideal_indistinguishable(const CMatrix& u, const Occupation& n,
                                               const Occupation& m);

/// Reference value from creation/annihilation operator contractions.
/// Shares no code with the other engines apart from spectral overlaps.
ProbabilityResult prob_oracle(const EnsembleInput& input, const DetectorBank& bank,
                              const CMatrix& u, const Occupation& n, const Occupation& m);

/// Everything needed to evaluate any engine on one network and input.
struct Experiment {
  CMatrix network;
  Occupation input;
  /// One state per photon, in k-list order. Empty means identical Gaussian
  /// photons (GaussianState{}).
  std::vector<MixedState> photons;
  /// Overrides `photons` for the general and oracle engines.
  std::optional<EnsembleInput> ensemble;
  DetectorBank detectors{DetectorModel::ideal()};
};

/// Checks shapes, unitarity, states and detectors; throws on invalid input.
void validate(const Experiment& e, double unitarity_tol = kUserUnitarityTol);

ProbabilityResult compute_probability(const Experiment& e, Engine engine, const Occupation& m);

struct Distribution {
  Occupation input;
  Engine engine = Engine::kJMatrix;
  std::vector<ProbabilityResult> outputs;
  double sum = 0.0;
};

/// Probabilities of every output configuration, in enumerate_outputs order.
/// Work is split over `threads` workers; the result does not depend on it.
Distribution compute_distribution(const Experiment& e, Engine engine, int threads = 1);

struct NormalizationReport {
  double sum = 0.0;
  double deviation = 0.0;  // |sum - 1|
};

NormalizationReport normalization_report(const Experiment& e, Engine engine, int threads = 1);

}  // namespace indist

#endif  // INDIST_PROBABILITY_HPP_
