#include "indist/jmatrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "indist/errors.hpp"
#include "indist/network.hpp"

namespace indist {

const DetectorModel& detector_for(const DetectorBank& bank, int mode) {
  if (bank.empty()) throw ArgumentError("empty detector bank");
  if (bank.size() == 1) return bank.front();
  if (mode < 0 || mode >= static_cast<int>(bank.size())) {
    throw ArgumentError("no detector for output mode " + std::to_string(mode));
  }
  return bank[mode];
}

bool is_uniform(const DetectorBank& bank) {
  for (const auto& d : bank) {
    if (!(d == bank.front())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// JMatrix

JMatrix JMatrix::dense(CMatrix entries, ModeList context, bool context_free) {
  const auto size = static_cast<Eigen::Index>(factorial(static_cast<int>(context.size())));
  if (entries.rows() != size || entries.cols() != size) {
    throw ArgumentError("dense J has the wrong shape for its context");
  }
  JMatrix j;
  j.n_ = static_cast<int>(context.size());
  j.storage_ = Storage::kDense;
  j.dense_ = std::move(entries);
  j.context_ = std::move(context);
  j.context_free_ = context_free;
  return j;
}

JMatrix JMatrix::cycle_compressed(int n, std::map<CycleType, Complex> values) {
  JMatrix j;
  j.n_ = n;
  j.storage_ = Storage::kCycleCompressed;
  j.cycles_ = std::move(values);
  j.context_free_ = true;
  return j;
}

JMatrix JMatrix::lazy(int n, Entry entry, ModeList context, bool context_free) {
  JMatrix j;
  j.n_ = n;
  j.storage_ = Storage::kLazy;
  j.lazy_ = std::move(entry);
  j.context_ = std::move(context);
  j.context_free_ = context_free;
  return j;
}

Complex JMatrix::operator()(const Permutation& s1, const Permutation& s2) const {
  switch (storage_) {
    case Storage::kDense:
      return dense_(static_cast<Eigen::Index>(s1.rank()), static_cast<Eigen::Index>(s2.rank()));
    case Storage::kCycleCompressed:
      return cycles_.at(cycle_type(s2 * s1.inverse()));
    case Storage::kLazy:
      return lazy_(s1, s2);
  }
  return 0.0;
}

Complex JMatrix::at(std::uint64_t row, std::uint64_t col) const {
  if (storage_ == Storage::kDense) {
    return dense_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  return (*this)(Permutation::from_rank(n_, row), Permutation::from_rank(n_, col));
}

const CMatrix& JMatrix::entries() const {
  if (storage_ != Storage::kDense) throw ArgumentError("J is not stored densely");
  return dense_;
}

CMatrix JMatrix::to_dense() const {
  if (storage_ == Storage::kDense) return dense_;
  if (n_ > kMaxDenseN) {
    throw SizeLimitError("dense J requested for N = " + std::to_string(n_));
  }
  const auto perms = enumerate_permutations(n_);
  const auto size = static_cast<Eigen::Index>(perms.size());
  CMatrix out(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    for (Eigen::Index b = 0; b < size; ++b) out(a, b) = (*this)(perms[a], perms[b]);
  }
  return out;
}

const std::map<CycleType, Complex>& JMatrix::cycle_values() const {
  if (storage_ != Storage::kCycleCompressed) throw ArgumentError("J is not cycle compressed");
  return cycles_;
}

void JMatrix::check_context(const ModeList& output_modes) const {
  if (static_cast<int>(output_modes.size()) != n_) {
    throw ArgumentError("J was built for " + std::to_string(n_) + " photons");
  }
  if (!context_free_ && output_modes != context_) {
    throw ArgumentError("J was built for a different output configuration");
  }
}

// ---------------------------------------------------------------------------
// Builders

namespace {

struct Setup {
  ModeList k;
  ModeList l;
  bool uniform = true;
};

Setup prepare(std::size_t photon_count, const DetectorBank& bank, const Occupation& n,
              const Occupation& m) {
  if (n.size() != m.size()) throw ArgumentError("input and output mode counts differ");
  Setup s{mode_list(n), mode_list(m), is_uniform(bank)};
  if (s.k.size() != s.l.size()) throw ArgumentError("input and output photon numbers differ");
  if (photon_count != s.k.size()) {
    throw ArgumentError("expected " + std::to_string(s.k.size()) + " photon states, got " +
                        std::to_string(photon_count));
  }
  if (bank.size() != 1 && bank.size() != m.size()) {
    throw ArgumentError("detector bank must have one entry or one per mode");
  }
  for (const auto& d : bank) validate_detector(d);
  return s;
}

// Overlap tables G_l(a, b), one per output slot.
std::vector<CMatrix> slot_grams(const std::vector<PureState>& states, const DetectorBank& bank,
                                const ModeList& l) {
  std::map<int, CMatrix> by_mode;
  std::vector<CMatrix> out;
  for (int mode : l) {
    auto it = by_mode.find(mode);
    if (it == by_mode.end()) {
      it = by_mode.emplace(mode, gram_matrix(states, detector_for(bank, mode))).first;
    }
    out.push_back(it->second);
  }
  return out;
}

void require_same_state_per_mode(const std::vector<PureState>& photons, const ModeList& k) {
  for (std::size_t a = 0; a + 1 < k.size(); ++a) {
    if (k[a] != k[a + 1]) continue;
    if (std::abs(overlap(photons[a], photons[a + 1])) < 1.0 - 1e-9) {
      throw UnsupportedInputError("photons sharing input mode " + std::to_string(k[a]) +
                                  " must be in the same state");
    }
  }
}

// Fills a Hermitian matrix from its upper triangle.
CMatrix fill_hermitian(int n, const JMatrix::Entry& entry) {
  const auto perms = enumerate_permutations(n);
  const auto size = static_cast<Eigen::Index>(perms.size());
  CMatrix out(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    out(a, a) = entry(perms[a], perms[a]).real();
    for (Eigen::Index b = a + 1; b < size; ++b) {
      out(a, b) = entry(perms[a], perms[b]);
      out(b, a) = std::conj(out(a, b));
    }
  }
  return out;
}

JMatrix finish(int n, const JMatrix::Entry& entry, const Setup& s) {
  if (n <= kMaxDenseN) return JMatrix::dense(fill_hermitian(n, entry), s.l, s.uniform);
  return JMatrix::lazy(n, entry, s.l, s.uniform);
}

}  // namespace

JMatrix build_pure(const std::vector<PureState>& photons, const DetectorBank& bank,
                   const Occupation& n, const Occupation& m) {
  const Setup s = prepare(photons.size(), bank, n, m);
  for (const auto& p : photons) validate_state(p);
  require_same_state_per_mode(photons, s.k);
  const int count = static_cast<int>(photons.size());
  auto grams = std::make_shared<std::vector<CMatrix>>(slot_grams(photons, bank, s.l));
  JMatrix::Entry entry = [grams, count](const Permutation& s1, const Permutation& s2) {
    Complex prod(1.0);
    for (int a = 0; a < count; ++a) prod *= (*grams)[a](s1(a), s2(a));
    return prod;
  };
  return finish(count, entry, s);
}

namespace {

// Traces over cycles of s2 s1^{-1}, with weighted Gram blocks per detector.
class CycleTracer {
 public:
  CycleTracer(const std::vector<MixedState>& photons, const DetectorBank& bank, const ModeList& l)
      : l_(l) {
    std::vector<PureState> atoms;
    for (const auto& p : photons) {
      offsets_.push_back(static_cast<int>(atoms.size()));
      for (const auto& term : p.terms) atoms.push_back(term.state);
      sizes_.push_back(p.size());
    }
    RVector sqrt_w(static_cast<Eigen::Index>(atoms.size()));
    for (std::size_t a = 0; a < photons.size(); ++a) {
      for (int i = 0; i < photons[a].size(); ++i) {
        sqrt_w(offsets_[a] + i) = std::sqrt(photons[a].terms[i].weight);
      }
    }
    for (int mode : l) {
      if (detector_index_.count(mode) != 0) continue;
      const DetectorModel& d = detector_for(bank, mode);
      int found = -1;
      for (std::size_t i = 0; i < detectors_.size(); ++i) {
        if (detectors_[i] == d) found = static_cast<int>(i);
      }
      if (found < 0) {
        found = static_cast<int>(detectors_.size());
        detectors_.push_back(d);
        weighted_.push_back(sqrt_w.asDiagonal() * gram_matrix(atoms, d) * sqrt_w.asDiagonal());
      }
      detector_index_[mode] = found;
    }
  }

  Complex operator()(const Permutation& s1, const Permutation& s2) {
    const Permutation rel = s2 * s1.inverse();
    const Permutation s1_inv = s1.inverse();
    Complex total(1.0);
    for (const auto& cycle : rel.cycles()) {
      std::vector<int> key;
      for (int a : cycle) {
        key.push_back(a);
        key.push_back(detector_index_.at(l_[s1_inv(a)]));
      }
      auto it = cache_.find(key);
      if (it == cache_.end()) it = cache_.emplace(key, trace(key)).first;
      total *= it->second;
    }
    return total;
  }

 private:
  CMatrix block(int det, int a, int b) const {
    return weighted_[det].block(offsets_[a], offsets_[b], sizes_[a], sizes_[b]);
  }

  Complex trace(const std::vector<int>& key) const {
    const std::size_t len = key.size() / 2;
    CMatrix prod = block(key[1], key[0], key[len == 1 ? 0 : 2]);
    for (std::size_t j = 1; j < len; ++j) {
      const int next = key[2 * ((j + 1) % len)];
      prod = prod * block(key[2 * j + 1], key[2 * j], next);
    }
    return prod.trace();
  }

  ModeList l_;
  std::vector<int> offsets_;
  std::vector<int> sizes_;
  std::vector<DetectorModel> detectors_;
  std::vector<CMatrix> weighted_;
  std::map<int, int> detector_index_;
  std::map<std::vector<int>, Complex> cache_;
};

}  // namespace

JMatrix build_mixed(const std::vector<MixedState>& photons, const DetectorBank& bank,
                    const Occupation& n, const Occupation& m) {
  const Setup s = prepare(photons.size(), bank, n, m);
  for (std::size_t a = 0; a < photons.size(); ++a) {
    double total = 0.0;
    for (const auto& term : photons[a].terms) {
      validate_state(term.state);
      if (term.weight < 0.0) throw ValidationError("negative ensemble weight");
      total += term.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError("ensemble weights do not sum to 1");
    if (a + 1 < photons.size() && s.k[a] == s.k[a + 1] &&
        !(photons[a].is_pure() && photons[a + 1].is_pure())) {
      throw UnsupportedInputError("mixed photons cannot share an input mode");
    }
  }
  std::vector<PureState> firsts;
  bool all_pure = true;
  for (const auto& p : photons) {
    firsts.push_back(p.terms.front().state);
    all_pure = all_pure && p.is_pure();
  }
  if (all_pure) require_same_state_per_mode(firsts, s.k);
  auto tracer = std::make_shared<CycleTracer>(photons, bank, s.l);
  JMatrix::Entry entry = [tracer](const Permutation& s1, const Permutation& s2) {
    return (*tracer)(s1, s2);
  };
  return finish(static_cast<int>(photons.size()), entry, s);
}

JMatrix build_cycle_compressed(const MixedState& rho, const DetectorModel& gamma, int n) {
  if (n < 1) throw ArgumentError("need at least one photon");
  validate_detector(gamma);
  std::vector<double> g(n);
  for (int k = 1; k <= n; ++k) g[k - 1] = gk_trace(rho, gamma, k);
  std::map<CycleType, Complex> values;
  for (const CycleType& ct : enumerate_cycle_types(n)) {
    double v = 1.0;
    for (int k = 1; k <= n; ++k) v *= std::pow(g[k - 1], ct.counts[k - 1]);
    values.emplace(ct, v);
  }
  return JMatrix::cycle_compressed(n, std::move(values));
}

JMatrix build_extreme(Extreme kind, const std::vector<PureState>& states,
                      const DetectorBank& bank, const Occupation& n, const Occupation& m) {
  const int count = total_photons(n);
  if (kind == Extreme::kIndistinguishable) {
    if (states.empty()) throw ArgumentError("indistinguishable case needs a reference state");
    const Setup s = prepare(static_cast<std::size_t>(count), bank, n, m);
    validate_state(states.front());
    Complex d(1.0);
    for (int mode : s.l) d *= overlap(states.front(), detector_for(bank, mode), states.front());
    JMatrix::Entry entry = [d](const Permutation&, const Permutation&) { return d; };
    return finish(count, entry, s);
  }
  const Setup s = prepare(states.size(), bank, n, m);
  for (const auto& p : states) validate_state(p);
  auto grams = std::make_shared<std::vector<CMatrix>>(slot_grams(states, bank, s.l));
  const ModeSubgroup subgroup(s.k);
  JMatrix::Entry entry = [grams, subgroup, count](const Permutation& s1, const Permutation& s2) {
    if (!subgroup.contains(s2 * s1.inverse())) return Complex(0.0);
    Complex prod(1.0);
    for (int a = 0; a < count; ++a) prod *= (*grams)[a](s1(a), s1(a)).real();
    return prod;
  };
  return finish(count, entry, s);
}

// ---------------------------------------------------------------------------
// Reduction, spectrum, purity

namespace {

[[noreturn]] void degenerate(const Permutation& p) {
  std::ostringstream os;
  os << "J vanishes on the diagonal at permutation (";
  for (int i = 0; i < p.size(); ++i) os << (i ? "," : "") << p(i);
  os << ")";
  throw DegenerateDetectionError(os.str());
}

}  // namespace

JMatrix reduce(const JMatrix& j) {
  if (j.reduced_) return j;
  JMatrix out = j;
  out.reduced_ = true;
  const int n = j.n();
  switch (j.storage()) {
    case JMatrix::Storage::kDense: {
      RVector inv_sqrt(j.dense_.rows());
      for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i) {
        const double d = j.dense_(i, i).real();
        if (!(d > 0.0)) degenerate(Permutation::from_rank(n, static_cast<std::uint64_t>(i)));
        inv_sqrt(i) = 1.0 / std::sqrt(d);
      }
      out.dense_ = inv_sqrt.asDiagonal() * j.dense_ * inv_sqrt.asDiagonal();
      for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i) out.dense_(i, i) = 1.0;
      break;
    }
    case JMatrix::Storage::kCycleCompressed: {
      CycleType id{std::vector<int>(n, 0)};
      id.counts[0] = n;
      const double d = j.cycles_.at(id).real();
      if (!(d > 0.0)) degenerate(Permutation::identity(n));
      for (auto& [ct, v] : out.cycles_) v /= d;
      out.cycles_[id] = 1.0;
      break;
    }
    case JMatrix::Storage::kLazy: {
      for_each_permutation(n, [&](const Permutation& p) {
        if (!(j(p, p).real() > 0.0)) degenerate(p);
      });
      JMatrix::Entry base = j.lazy_;
      out.lazy_ = [base](const Permutation& s1, const Permutation& s2) {
        return base(s1, s2) / std::sqrt(base(s1, s1).real() * base(s2, s2).real());
      };
      break;
    }
  }
  return out;
}

double min_eigenvalue(const JMatrix& j) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(j.to_dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void validate_psd(const JMatrix& j) {
  const double lambda = min_eigenvalue(j);
  if (lambda < -kPsdTolerance) {
    throw ValidationError("J is not positive semidefinite (smallest eigenvalue " +
                          std::to_string(lambda) + ")");
  }
}

PurityResult purity_from_trace(double trace, int n) {
  PurityResult r;
  r.trace = trace;
  if (n <= 1) {
    r.degenerate = true;
    r.purity = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const double inv_fact = 1.0 / factorial(n);
  r.purity = (trace - inv_fact) / (1.0 - inv_fact);
  return r;
}

PurityResult purity(const JMatrix& j) {
  const JMatrix jr = reduce(j);
  const int n = jr.n();
  const double nf = factorial(n);
  double trace = 0.0;
  switch (jr.storage()) {
    case JMatrix::Storage::kDense:
      trace = jr.entries().squaredNorm() / (nf * nf);
      break;
    case JMatrix::Storage::kCycleCompressed:
      for (const auto& [ct, v] : jr.cycle_values()) trace += ct.class_size() * std::norm(v) / nf;
      break;
    case JMatrix::Storage::kLazy: {
      const auto perms = enumerate_permutations(n);
      for (const auto& a : perms) {
        for (const auto& b : perms) trace += std::norm(jr(a, b));
      }
      trace /= nf * nf;
      break;
    }
  }
  return purity_from_trace(trace, n);
}

Complex mandel_visibility(const MixedState& rho1, const MixedState& rho2,
                          const DetectorModel& gamma1, const DetectorModel& gamma2) {
  const double j_ii = detection_probability(rho1, gamma1) * detection_probability(rho2, gamma2);
  const double j_tt = detection_probability(rho1, gamma2) * detection_probability(rho2, gamma1);
  Complex j_ti(0.0);
  for (const auto& a : rho1.terms) {
    for (const auto& b : rho2.terms) {
      j_ti += a.weight * b.weight * overlap(b.state, gamma1, a.state) *
              overlap(a.state, gamma2, b.state);
    }
  }
  if (!(j_ii > 0.0) || !(j_tt > 0.0)) {
    throw DegenerateDetectionError("visibility undefined: a detection probability vanishes");
  }
  return j_ti / std::sqrt(j_ii * j_tt);
}

}  // namespace indist
