#ifndef INDIST_JMATRIX_HPP_
#define INDIST_JMATRIX_HPP_

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "indist/spectral.hpp"
#include "indist/symgroup.hpp"
#include "indist/types.hpp"

namespace indist {

/// Largest N stored densely; above it J is lazy or cycle-compressed.
inline constexpr int kMaxDenseN = 6;
inline constexpr double kPsdTolerance = 1e-9;

/// One detector per output mode; a single entry applies to every mode.
using DetectorBank = std::vector<DetectorModel>;

const DetectorModel& detector_for(const DetectorBank& bank, int mode);
/// True when every mode sees the same detector, so J does not depend on the
/// output configuration.
bool is_uniform(const DetectorBank& bank);

/// The N! x N! distinguishability matrix J(sigma1, sigma2), rows and columns
/// in lexicographic permutation order.
///
/// J depends on the output l-list through the detectors. That list is kept
/// as the matrix context and probability engines refuse to combine J with a
/// different output, unless the matrix is context free (identical detectors).
class JMatrix {
 public:
  enum class Storage { kDense, kCycleCompressed, kLazy };
  using Entry = std::function<Complex(const Permutation&, const Permutation&)>;

  static JMatrix dense(CMatrix entries, ModeList context, bool context_free);
  static JMatrix cycle_compressed(int n, std::map<CycleType, Complex> values);
  static JMatrix lazy(int n, Entry entry, ModeList context, bool context_free);

  int n() const { return n_; }
  Storage storage() const { return storage_; }
  bool reduced() const { return reduced_; }
  const ModeList& context() const { return context_; }
  bool context_free() const { return context_free_; }

  Complex operator()(const Permutation& s1, const Permutation& s2) const;
  Complex at(std::uint64_t row, std::uint64_t col) const;

  /// Dense entries; throws unless storage() is kDense.
  const CMatrix& entries() const;
  /// Materializes any storage as a dense matrix (N <= kMaxDenseN).
  CMatrix to_dense() const;
  /// Per-cycle-type values; throws unless storage() is kCycleCompressed.
  const std::map<CycleType, Complex>& cycle_values() const;

  /// Throws ArgumentError when `output_modes` differs from the context.
  void check_context(const ModeList& output_modes) const;

  friend JMatrix reduce(const JMatrix& j);

 private:
  int n_ = 0;
  Storage storage_ = Storage::kDense;
  bool reduced_ = false;
  bool context_free_ = true;
  ModeList context_;
  CMatrix dense_;
  std::map<CycleType, Complex> cycles_;
  Entry lazy_;
};

/// J for pure product inputs:
///   J(s1, s2) = prod_a <phi_{s1(a)}| Gamma_{l_a} |phi_{s2(a)}>.
/// `photons` follows the input k-list; photons sharing a mode must carry
/// the same state.
JMatrix build_pure(const std::vector<PureState>& photons, const DetectorBank& bank,
                   const Occupation& n, const Occupation& m);

/// J for product mixed inputs, evaluated as products of traces over the
/// cycles of s2 s1^{-1}.
JMatrix build_mixed(const std::vector<MixedState>& photons, const DetectorBank& bank,
                    const Occupation& n, const Occupation& m);

/// J for N copies of rho seen by identical detectors: the entry only
/// depends on the cycle type of s2 s1^{-1} and equals prod_k g_k^{C_k}.
JMatrix build_cycle_compressed(const MixedState& rho, const DetectorModel& gamma, int n);

enum class Extreme { kIndistinguishable, kClassical };

/// Extreme cases. kIndistinguishable: every photon in `states[0]`, so J is
/// D times the all-ones matrix. kClassical: `states` (one per photon) are
/// treated as mutually orthogonal across modes, so J is block diagonal over
/// cosets of the mode subgroup.
JMatrix build_extreme(Extreme kind, const std::vector<PureState>& states,
                      const DetectorBank& bank, const Occupation& n, const Occupation& m);

/// J-hat = D^{-1/2} J D^{-1/2}. Throws DegenerateDetectionError when a
/// diagonal entry vanishes.
JMatrix reduce(const JMatrix& j);

/// Smallest eigenvalue of a dense-representable J.
double min_eigenvalue(const JMatrix& j);
/// Throws ValidationError when min_eigenvalue < -kPsdTolerance.
void validate_psd(const JMatrix& j);

struct PurityResult {
  double trace = 0.0;   // Tr{(J-hat / N!)^2}
  double purity = 0.0;  // normalized to [0, 1]
  bool degenerate = false;  // N = 1: normalization undefined
};

/// Purity of the reduced matrix; `j` is reduced first when needed.
PurityResult purity(const JMatrix& j);

/// Normalized purity from Tr{(J-hat/N!)^2}.
PurityResult purity_from_trace(double trace, int n);

/// Two-photon visibility J(T,I) / sqrt(J(I,I) J(T,T)).
Complex mandel_visibility(const MixedState& rho1, const MixedState& rho2,
                          const DetectorModel& gamma1, const DetectorModel& gamma2);

}  // namespace indist

#endif  // INDIST_JMATRIX_HPP_
