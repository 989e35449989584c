#include "indist/zeroprob.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "indist/errors.hpp"
#include "indist/jmatrix.hpp"
#include "indist/network.hpp"
#include "indist/permanent.hpp"
#include "indist/symgroup.hpp"

namespace indist {

int GroupSpec::groups() const {
  int q = 0;
  for (int g : labels) q = std::max(q, g + 1);
  return q;
}

std::vector<int> GroupSpec::counts() const {
  std::vector<int> c(groups(), 0);
  for (int g : labels) ++c[g];
  return c;
}

bool GroupAmplitudes::all_zero() const {
  return std::all_of(zero.begin(), zero.end(), [](bool z) { return z; });
}

double GroupAmplitudes::max_abs() const {
  double best = 0.0;
  for (const Complex& y : values) best = std::max(best, std::abs(y));
  return best;
}

namespace {

void check_spec(const GroupSpec& spec, const ModeList& k) {
  if (spec.labels.size() != k.size()) {
    throw ArgumentError("group labels must cover every photon");
  }
  for (int g : spec.labels) {
    if (g < 0) throw ArgumentError("negative group label");
  }
  for (int g : spec.counts()) {
    if (g == 0) throw ArgumentError("group labels must be contiguous from 0");
  }
  for (std::size_t a = 0; a + 1 < k.size(); ++a) {
    if (k[a] == k[a + 1] && spec.labels[a] != spec.labels[a + 1]) {
      throw UnsupportedInputError("photons sharing an input mode must belong to one group");
    }
  }
}

// Group states realizing a Gram matrix with every cross overlap equal to s.
std::vector<PureState> equal_overlap_states(int groups, double s) {
  RMatrix gram = RMatrix::Constant(groups, groups, s);
  gram.diagonal().setOnes();
  const RMatrix factor = gram.llt().matrixL().transpose();
  std::vector<PureState> out;
  for (int q = 0; q < groups; ++q) {
    out.emplace_back(FiniteRankState{factor.col(q).cast<Complex>()});
  }
  return out;
}

}  // namespace

GroupAmplitudes group_amplitudes(const CMatrix& u, const Occupation& n, const Occupation& m,
                                 const GroupSpec& spec) {
  const CMatrix sub = submatrix(u, n, m);
  const ModeList k = mode_list(n);
  check_spec(spec, k);
  const int count = static_cast<int>(k.size());
  const int groups = spec.groups();
  std::vector<std::vector<int>> rows(groups);
  for (int b = 0; b < count; ++b) rows[spec.labels[b]].push_back(b);

  GroupAmplitudes out;
  std::vector<int> word = spec.labels;
  std::sort(word.begin(), word.end());
  do {
    Complex y(1.0);
    double scale = 1.0;
    for (int q = 0; q < groups; ++q) {
      std::vector<int> cols;
      for (int a = 0; a < count; ++a) {
        if (word[a] == q) cols.push_back(a);
      }
      CMatrix block(rows[q].size(), cols.size());
      for (std::size_t i = 0; i < rows[q].size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) block(i, j) = sub(rows[q][i], cols[j]);
      }
      y *= permanent_ryser(block);
      scale *= permanent_scale(block);
    }
    out.words.push_back(word);
    out.values.push_back(y);
    out.zero.push_back(std::abs(y) < kPermanentZeroTol * scale);
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

ProbabilityResult prob_group_factorized(const CMatrix& u, const Occupation& n,
                                        const Occupation& m, const GroupSpec& spec,
                                        GroupDiagnostics* diagnostics) {
  const ModeList k = mode_list(n);
  check_spec(spec, k);
  const int groups = spec.groups();
  if (static_cast<int>(spec.states.size()) != groups) {
    throw ArgumentError("need one spectral state per group");
  }
  const CMatrix gram = gram_matrix(spec.states, DetectorModel::ideal());
  GroupDiagnostics diag;
  diag.independent = factor_gram(gram).rank() == groups;
  if (!diag.independent) {
    diag.used_fallback = true;
    if (diagnostics != nullptr) *diagnostics = diag;
    std::vector<PureState> photons;
    for (int g : spec.labels) photons.push_back(spec.states[g]);
    const DetectorBank bank{DetectorModel::ideal()};
    return prob_jmatrix(build_pure(photons, bank, n, m), u, n, m);
  }
  if (diagnostics != nullptr) *diagnostics = diag;

  const GroupAmplitudes y = group_amplitudes(u, n, m, spec);
  Complex total(0.0);
  for (std::size_t a = 0; a < y.words.size(); ++a) {
    for (std::size_t b = 0; b < y.words.size(); ++b) {
      Complex kernel(1.0);
      for (std::size_t s = 0; s < y.words[a].size(); ++s) kernel *= gram(y.words[a][s], y.words[b][s]);
      total += kernel * std::conj(y.values[a]) * y.values[b];
    }
  }
  ProbabilityResult r;
  r.m = m;
  total /= multiplicity(n) * multiplicity(m);
  r.imag_residual = std::abs(total.imag());
  r.p = std::max(total.real(), 0.0);
  r.clamped = total.real() < 0.0;
  if (total.real() < -kNegativeClampTol) throw ValidationError("negative probability");
  return r;
}

std::string to_string(SuppressionRecord::Verdict v) {
  return v == SuppressionRecord::Verdict::kSuppressed ? "suppressed" : "not-suppressed";
}

std::vector<SuppressionRecord> suppression_scan(const CMatrix& u, const Occupation& n,
                                                const GroupSpec& spec,
                                                const std::vector<double>& grid) {
  validate_unitary(u, kUserUnitarityTol);
  const ModeList k = mode_list(n);
  check_spec(spec, k);
  const int groups = spec.groups();
  const int modes = static_cast<int>(u.rows());
  const auto outputs = enumerate_outputs(modes, static_cast<int>(k.size()));

  const DetectorBank bank{DetectorModel::ideal()};
  std::vector<JMatrix> js;
  for (double s : grid) {
    if (!(s >= 0.0 && s < 1.0)) throw ArgumentError("grid overlaps must lie in [0, 1)");
    const auto states = equal_overlap_states(groups, s);
    std::vector<PureState> photons;
    for (int g : spec.labels) photons.push_back(states[g]);
    js.push_back(build_pure(photons, bank, n, outputs.front()));
  }

  std::vector<SuppressionRecord> records;
  for (const Occupation& m : outputs) {
    SuppressionRecord r;
    r.m = m;
    const GroupAmplitudes y = group_amplitudes(u, n, m, spec);
    r.max_amplitude = y.max_abs();
    r.classical = prob_classical(u, n, m).p;
    r.overlaps = grid;
    for (const JMatrix& j : js) r.probabilities.push_back(prob_jmatrix(j, u, n, m).p);
    if (y.all_zero() && r.classical > kPermanentZeroTol) {
      r.verdict = SuppressionRecord::Verdict::kSuppressed;
      for (double p : r.probabilities) r.violation = r.violation || p >= kPermanentZeroTol;
    }
    records.push_back(std::move(r));
  }
  return records;
}

IncompatibilityReport three_photon_incompatibility(const CMatrix& u) {
  if (u.rows() != 3 || u.cols() != 3) throw ArgumentError("three-photon analysis needs a 3x3 matrix");
  // 1-based accessor to mirror the usual index notation.
  auto U = [&](int i, int j) { return u(i - 1, j - 1); };
  IncompatibilityReport r;
  r.set_one = {U(1, 1) * U(2, 2) * U(3, 3) + U(1, 3) * U(2, 2) * U(3, 1),
               U(2, 1) * U(1, 2) * U(3, 3) + U(2, 3) * U(1, 2) * U(3, 1),
               U(1, 1) * U(3, 2) * U(2, 3) + U(1, 3) * U(3, 2) * U(2, 1)};
  r.set_two = {U(1, 1) * U(2, 2) * U(3, 3) + U(1, 1) * U(2, 3) * U(3, 2),
               U(2, 1) * U(1, 2) * U(3, 3) + U(2, 1) * U(1, 3) * U(3, 2),
               U(3, 1) * U(2, 2) * U(1, 3) + U(3, 1) * U(2, 3) * U(1, 2)};
  for (const Complex& c : r.set_one) r.max_residual_one = std::max(r.max_residual_one, std::abs(c));
  for (const Complex& c : r.set_two) r.max_residual_two = std::max(r.max_residual_two, std::abs(c));
  r.max_residual = std::min(r.max_residual_one, r.max_residual_two);

  auto g = [&](int i, int j) { return U(i, j) / U(i, i); };
  r.pair_product = (g(1, 2) * g(2, 1)) * (g(2, 3) * g(3, 2)) * (g(1, 3) * g(3, 1));
  r.triple_product = (g(1, 2) * g(2, 3) * g(3, 1)) * (g(1, 3) * g(2, 1) * g(3, 2));
  r.identity_residual =
      std::abs(r.pair_product - r.triple_product) / std::max(1.0, std::abs(r.pair_product));
  return r;
}

bool vanishing_smatrix_filter(const std::vector<int>& j, const GroupSpec& spec) {
  const int count = static_cast<int>(spec.labels.size());
  if (static_cast<int>(j.size()) != count) throw ArgumentError("basis tuple has the wrong length");
  // Kuhn's augmenting paths on the bipartite pattern of S: row beta is
  // joined to column alpha when photon beta's group is j_alpha.
  std::vector<int> owner(count, -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int beta, std::vector<bool>& seen) {
    for (int alpha = 0; alpha < count; ++alpha) {
      if (j[alpha] != spec.labels[beta] || seen[alpha]) continue;
      seen[alpha] = true;
      if (owner[alpha] < 0 || augment(owner[alpha], seen)) {
        owner[alpha] = beta;
        return true;
      }
    }
    return false;
  };
  for (int beta = 0; beta < count; ++beta) {
    std::vector<bool> seen(count, false);
    if (!augment(beta, seen)) return true;
  }
  return false;
}

}  // namespace indist
