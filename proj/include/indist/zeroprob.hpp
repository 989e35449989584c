#ifndef INDIST_ZEROPROB_HPP_
#define INDIST_ZEROPROB_HPP_

#include <array>
#include <string>
#include <vector>

#include "indist/probability.hpp"
#include "indist/spectral.hpp"
#include "indist/types.hpp"

namespace indist {

/// Photons split into Q groups; photons of a group share one spectral
/// state and different groups are linearly independent.
struct GroupSpec {
  std::vector<int> labels;        // group index per photon, k-list order
  std::vector<PureState> states;  // one per group, may be empty for scans

  int groups() const;
  std::vector<int> counts() const;
};

/// Group amplitudes Y_w = prod_q per(U[rows of group q | output slots with
/// w = q]) for every distinct assignment w of group labels to output slots.
struct GroupAmplitudes {
  std::vector<std::vector<int>> words;
  std::vector<Complex> values;
  std::vector<bool> zero;  // scale-aware permanent zero test
  bool all_zero() const;
  double max_abs() const;
};

GroupAmplitudes group_amplitudes(const CMatrix& u, const Occupation& n, const Occupation& m,
                                 const GroupSpec& spec);

struct GroupDiagnostics {
  bool independent = true;  // group Gram matrix has full rank
  bool used_fallback = false;
};

/// Probability as the quadratic form of the group amplitudes with
/// K(w, w') = prod_a <phi_{w_a}|phi_{w'_a}>, ideal detectors. Falls back to
/// the J-matrix engine when the group states are linearly dependent.
ProbabilityResult prob_group_factorized(const CMatrix& u, const Occupation& n,
                                        const Occupation& m, const GroupSpec& spec,
                                        GroupDiagnostics* diagnostics = nullptr);

/// Overlap magnitudes between different groups used by suppression scans.
inline const std::vector<double> kDistinguishabilityGrid = {0.9, 0.5, 0.1, 0.0};

struct SuppressionRecord {
  enum class Verdict { kSuppressed, kNotSuppressed };

  Occupation m;
  Verdict verdict = Verdict::kNotSuppressed;
  double max_amplitude = 0.0;  // max |Y_w|
  double classical = 0.0;      // distinguishable-particle probability
  std::vector<double> overlaps;       // grid of cross-group overlaps
  std::vector<double> probabilities;  // full probability at each overlap
  bool violation = false;  // suppressed but some probability >= 1e-12
};

std::string to_string(SuppressionRecord::Verdict v);

/// Scans every output. An output is flagged as suppressed when every group
/// amplitude vanishes while the classical probability does not, i.e. the
/// zero comes from interference. Full probabilities are recomputed with
/// the J-matrix engine at each grid point.
std::vector<SuppressionRecord> suppression_scan(
    const CMatrix& u, const Occupation& n, const GroupSpec& spec,
    const std::vector<double>& grid = kDistinguishabilityGrid);

/// Residuals of the two three-photon zero conditions and the sign witness
/// showing they cannot hold simultaneously.
struct IncompatibilityReport {
  std::array<Complex, 3> set_one{};  // U11U22U33+U13U22U31, U21U12U33+U23U12U31, U11U32U23+U13U32U21
  std::array<Complex, 3> set_two{};  // U11U22U33+U11U23U32, U21U12U33+U21U13U32, U31U22U13+U31U23U12
  double max_residual_one = 0.0;
  double max_residual_two = 0.0;
  /// min(max_residual_one, max_residual_two): both systems fail when > 0.
  double max_residual = 0.0;
  /// With g_ij = U_ij / U_ii: the pair product (g12 g21)(g23 g32)(g13 g31)
  /// equals the triple product (g12 g23 g31)(g13 g21 g32) identically.
  Complex pair_product;
  Complex triple_product;
  double identity_residual = 0.0;
  /// Values forced if the triple relations hold (+1) or the pair relations
  /// hold (-1).
  int forced_by_triples = 1;
  int forced_by_pairs = -1;
};

IncompatibilityReport three_photon_incompatibility(const CMatrix& u);

/// True when S(j) with S_{beta,alpha} = <j_alpha|phi_beta> (dual basis of
/// the group states) has no perfect matching, so per(U o S(j)) = 0 for
/// every U. Basis index j_alpha selects the dual vector of group j_alpha.
bool vanishing_smatrix_filter(const std::vector<int>& j, const GroupSpec& spec);

}  // namespace indist

#endif  // INDIST_ZEROPROB_HPP_
