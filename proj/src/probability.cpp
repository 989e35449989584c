#include "indist/probability.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>

#include "indist/errors.hpp"
#include "indist/network.hpp"
#include "indist/permanent.hpp"
#include "indist/symgroup.hpp"

namespace indist {

std::string to_string(Engine e) {
  switch (e) {
    case Engine::kJMatrix:
      return "jmatrix";
    case Engine::kPermanentBasis:
      return "permanent";
    case Engine::kGeneral:
      return "general";
    case Engine::kClassical:
      return "classical";
    case Engine::kIdeal:
      return "ideal";
    case Engine::kOracle:
      return "oracle";
  }
  return "unknown";
}

Engine engine_from_string(const std::string& name) {
  for (Engine e : {Engine::kJMatrix, Engine::kPermanentBasis, Engine::kGeneral,
                   Engine::kClassical, Engine::kIdeal, Engine::kOracle}) {
    if (to_string(e) == name) return e;
  }
  throw ArgumentError("unknown engine '" + name + "'");
}

namespace {

ProbabilityResult finalize(Complex value, const Occupation& m) {
  ProbabilityResult r;
  r.m = m;
  r.imag_residual = std::abs(value.imag());
  r.p = value.real();
  if (r.p < 0.0) {
    if (r.p < -kNegativeClampTol) {
      throw ValidationError("negative probability " + std::to_string(r.p));
    }
    r.p = 0.0;
    r.clamped = true;
  }
  return r;
}

void check_shapes(const CMatrix& u, const Occupation& n, const Occupation& m) {
  validate_occupation(n, static_cast<int>(u.rows()));
  validate_occupation(m, static_cast<int>(u.cols()));
  if (total_photons(n) != total_photons(m)) {
    throw ArgumentError("input and output photon numbers differ");
  }
}

// Distinct output modes of the l-list with their Gram factors.
std::map<int, GramFactor> detector_factors(const std::vector<PureState>& atoms,
                                           const DetectorBank& bank, const ModeList& l) {
  std::map<int, GramFactor> out;
  for (int mode : l) {
    if (out.count(mode) == 0) out.emplace(mode, orthonormalize(atoms, detector_for(bank, mode)));
  }
  return out;
}

// Calls visit(j) for every j with 0 <= j[a] < ranks[a], last index fastest.
void for_each_tuple(const std::vector<int>& ranks, const std::function<void(const std::vector<int>&)>& visit) {
  std::uint64_t count = 1;
  for (int r : ranks) {
    if (r == 0) return;
    count *= static_cast<std::uint64_t>(r);
    if (count > kMaxBasisTuples) {
      throw SizeLimitError("basis expansion needs more than " + std::to_string(kMaxBasisTuples) +
                           " terms");
    }
  }
  std::vector<int> j(ranks.size(), 0);
  while (true) {
    visit(j);
    int pos = static_cast<int>(ranks.size()) - 1;
    while (pos >= 0 && ++j[pos] == ranks[pos]) j[pos--] = 0;
    if (pos < 0) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ProbabilityResult prob_jmatrix(const JMatrix& j, const CMatrix& u, const Occupation& n,
                               const Occupation& m) {
  check_shapes(u, n, m);
  const ModeList k = mode_list(n);
  const ModeList l = mode_list(m);
  j.check_context(l);
  const int count = static_cast<int>(k.size());
  if (count > 8) throw SizeLimitError("J-matrix engine supports at most 8 photons");
  const auto perms = enumerate_permutations(count);
  CVector x(static_cast<Eigen::Index>(perms.size()));
  for (std::size_t s = 0; s < perms.size(); ++s) {
    Complex prod(1.0);
    for (int a = 0; a < count; ++a) prod *= u(k[perms[s](a)], l[a]);
    x(static_cast<Eigen::Index>(s)) = prod;
  }
  Complex total(0.0);
  switch (j.storage()) {
    case JMatrix::Storage::kDense:
      total = x.dot(j.entries() * x);
      break;
    case JMatrix::Storage::kCycleCompressed:
      for (const auto& rel : perms) {
        const Complex v = j.cycle_values().at(cycle_type(rel));
        Complex inner(0.0);
        for (std::size_t s = 0; s < perms.size(); ++s) {
          const auto t = static_cast<Eigen::Index>((rel * perms[s]).rank());
          inner += std::conj(x(static_cast<Eigen::Index>(s))) * x(t);
        }
        total += v * inner;
      }
      break;
    case JMatrix::Storage::kLazy:
      for (std::size_t a = 0; a < perms.size(); ++a) {
        for (std::size_t b = 0; b < perms.size(); ++b) {
          total += j(perms[a], perms[b]) * std::conj(x(static_cast<Eigen::Index>(a))) *
                   x(static_cast<Eigen::Index>(b));
        }
      }
      break;
  }
  return finalize(total / (multiplicity(n) * multiplicity(m)), m);
}

ProbabilityResult prob_permanent_basis(const std::vector<MixedState>& photons,
                                       const DetectorBank& bank, const CMatrix& u,
                                       const Occupation& n, const Occupation& m) {
  check_shapes(u, n, m);
  for (int v : n) {
    if (v > 1) {
      throw UnsupportedInputError(
          "basis-expansion engine needs at most one photon per input mode");
    }
  }
  const ModeList l = mode_list(m);
  const int count = static_cast<int>(l.size());
  if (static_cast<int>(photons.size()) != count) {
    throw ArgumentError("expected one spectral state per photon");
  }
  const CMatrix sub = submatrix(u, n, m);
  std::vector<int> members;
  for (const auto& p : photons) members.push_back(p.size());

  double total = 0.0;
  for_each_tuple(members, [&](const std::vector<int>& pick) {
    double weight = 1.0;
    std::vector<PureState> atoms;
    for (int a = 0; a < count; ++a) {
      weight *= photons[a].terms[pick[a]].weight;
      atoms.push_back(photons[a].terms[pick[a]].state);
    }
    if (weight == 0.0) return;
    const auto factors = detector_factors(atoms, bank, l);
    std::vector<int> ranks;
    for (int mode : l) ranks.push_back(factors.at(mode).rank());
    double partial = 0.0;
    CMatrix v(count, count);
    for_each_tuple(ranks, [&](const std::vector<int>& j) {
      for (int alpha = 0; alpha < count; ++alpha) {
        const CMatrix& w = factors.at(l[alpha]).coefficients;
        for (int beta = 0; beta < count; ++beta) {
          v(beta, alpha) = sub(beta, alpha) * w(j[alpha], beta);
        }
      }
      partial += std::norm(permanent_ryser(v));
    });
    total += weight * partial;
  });
  return finalize(total / multiplicity(m), m);
}

namespace {

void validate_ensemble(const EnsembleInput& input, const ModeList& k) {
  const int count = static_cast<int>(k.size());
  const int atoms = static_cast<int>(input.atoms.size());
  if (input.terms.empty()) throw ArgumentError("ensemble has no terms");
  for (const auto& s : input.atoms) validate_state(s);
  double weights = 0.0;
  const CMatrix gram = gram_matrix(input.atoms, DetectorModel::ideal());
  for (const auto& term : input.terms) {
    if (term.weight < 0.0) throw ValidationError("negative ensemble weight");
    weights += term.weight;
    std::map<std::vector<int>, Complex> lookup;
    for (const auto& [idx, c] : term.coeffs) {
      if (static_cast<int>(idx.size()) != count) {
        throw ArgumentError("coefficient index has the wrong number of photons");
      }
      for (int a : idx) {
        if (a < 0 || a >= atoms) throw ArgumentError("coefficient refers to a missing atom");
      }
      lookup[idx] += c;
    }
    // Symmetry under swaps of neighbours in the same input mode generates
    // the full mode subgroup.
    for (const auto& [idx, c] : lookup) {
      for (int a = 0; a + 1 < count; ++a) {
        if (k[a] != k[a + 1]) continue;
        std::vector<int> swapped = idx;
        std::swap(swapped[a], swapped[a + 1]);
        auto it = lookup.find(swapped);
        const Complex other = it == lookup.end() ? Complex(0.0) : it->second;
        if (std::abs(other - c) > 1e-12) {
          throw ValidationError("spectral coefficients are not symmetric within input mode " +
                                std::to_string(k[a]));
        }
      }
    }
    Complex norm(0.0);
    for (const auto& [ia, ca] : lookup) {
      for (const auto& [ib, cb] : lookup) {
        Complex prod = std::conj(ca) * cb;
        for (int a = 0; a < count; ++a) prod *= gram(ia[a], ib[a]);
        norm += prod;
      }
    }
    if (std::abs(norm - 1.0) > 1e-8) {
      throw ValidationError("ensemble term is not normalized (norm " +
                            std::to_string(norm.real()) + ")");
    }
  }
  if (std::abs(weights - 1.0) > 1e-9) throw ValidationError("ensemble weights do not sum to 1");
}

}  // namespace

ProbabilityResult prob_general(const EnsembleInput& input, const DetectorBank& bank,
                               const CMatrix& u, const Occupation& n, const Occupation& m) {
  check_shapes(u, n, m);
  const ModeList k = mode_list(n);
  const ModeList l = mode_list(m);
  const int count = static_cast<int>(k.size());
  validate_ensemble(input, k);
  const CMatrix sub = submatrix(u, n, m);
  const auto factors = detector_factors(input.atoms, bank, l);
  std::vector<int> ranks;
  for (int mode : l) ranks.push_back(factors.at(mode).rank());

  double total = 0.0;
  CMatrix b(count, count);
  for (const auto& term : input.terms) {
    if (term.weight == 0.0) continue;
    double partial = 0.0;
    for_each_tuple(ranks, [&](const std::vector<int>& j) {
      Complex amplitude(0.0);
      for (const auto& [idx, c] : term.coeffs) {
        for (int alpha = 0; alpha < count; ++alpha) {
          const CMatrix& w = factors.at(l[alpha]).coefficients;
          for (int beta = 0; beta < count; ++beta) {
            b(beta, alpha) = sub(beta, alpha) * w(j[alpha], idx[beta]);
          }
        }
        amplitude += c * permanent_ryser(b);
      }
      partial += std::norm(amplitude);
    });
    total += term.weight * partial;
  }
  return finalize(total / (multiplicity(n) * multiplicity(m)), m);
}

ProbabilityResult prob_classical(const CMatrix& u, const Occupation& n, const Occupation& m) {
  check_shapes(u, n, m);
  const RMatrix squared = submatrix(u, n, m).cwiseAbs2();
  return finalize(permanent_ryser(squared) / multiplicity(m), m);
}

ProbabilityResult prob_ideal_indistinguishable(const CMatrix& u, const Occupation& n,
                                               const Occupation& m) {
  check_shapes(u, n, m);
  const Complex per = permanent_ryser(submatrix(u, n, m));
  return finalize(std::norm(per) / (multiplicity(n) * multiplicity(m)), m);
}

ProbabilityResult prob_oracle(const EnsembleInput& input, const DetectorBank& bank,
                              const CMatrix& u, const Occupation& n, const Occupation& m) {
  check_shapes(u, n, m);
  const int modes = static_cast<int>(u.rows());
  // Creation operators act on input slots beta (mode in_mode[beta]);
  // annihilation operators on output slots alpha (mode out_mode[alpha]).
  std::vector<int> in_mode;
  std::vector<int> out_mode;
  double mu_in = 1.0;
  double mu_out = 1.0;
  for (int mode = 0; mode < modes; ++mode) {
    for (int c = 0; c < n[mode]; ++c) {
      in_mode.push_back(mode);
      mu_in *= c + 1;
    }
    for (int c = 0; c < m[mode]; ++c) {
      out_mode.push_back(mode);
      mu_out *= c + 1;
    }
  }
  const int count = static_cast<int>(in_mode.size());
  if (count > 6) throw SizeLimitError("oracle supports at most 6 photons");
  validate_ensemble(input, in_mode);

  // Expand prod_beta a^dag_{k_beta} = prod_beta sum_{l'} U_{k_beta, l'} b^dag_{l'} and
  // contract <0| prod_alpha b_{l_alpha} ... |0> as a sum over pairings pi
  // (output slot alpha <-> input slot pi(alpha)) with delta(l_alpha, l'_{pi(alpha)}).
  struct Pairing {
    std::vector<int> pi;
    Complex amplitude;
  };
  std::vector<Pairing> pairings;
  std::vector<int> targets(count, 0);
  std::vector<int> pi(count);
  while (true) {
    std::iota(pi.begin(), pi.end(), 0);
    do {
      bool match = true;
      for (int alpha = 0; alpha < count && match; ++alpha) {
        match = targets[pi[alpha]] == out_mode[alpha];
      }
      if (match) {
        Complex amp(1.0);
        for (int beta = 0; beta < count; ++beta) amp *= u(in_mode[beta], targets[beta]);
        pairings.push_back({pi, amp});
      }
    } while (std::next_permutation(pi.begin(), pi.end()));
    int pos = count - 1;
    while (pos >= 0 && ++targets[pos] == modes) targets[pos--] = 0;
    if (pos < 0) break;
  }

  // <atom x| Gamma_{l_alpha} |atom y>, cached per output slot.
  const auto atom_count = static_cast<Eigen::Index>(input.atoms.size());
  std::vector<CMatrix> contraction(count, CMatrix::Constant(atom_count, atom_count, Complex(NAN, 0)));
  auto contract = [&](int alpha, int x, int y) {
    Complex& slot = contraction[alpha](x, y);
    if (std::isnan(slot.real())) {
      slot = overlap(input.atoms[x], detector_for(bank, out_mode[alpha]), input.atoms[y]);
    }
    return slot;
  };

  Complex total(0.0);
  for (const auto& term : input.terms) {
    Complex partial(0.0);
    for (const auto& [bra_idx, bra_c] : term.coeffs) {
      for (const auto& [ket_idx, ket_c] : term.coeffs) {
        for (const auto& bra : pairings) {
          for (const auto& ket : pairings) {
            Complex prod = std::conj(bra_c * bra.amplitude) * ket_c * ket.amplitude;
            for (int alpha = 0; alpha < count; ++alpha) {
              prod *= contract(alpha, bra_idx[bra.pi[alpha]], ket_idx[ket.pi[alpha]]);
            }
            partial += prod;
          }
        }
      }
    }
    total += term.weight * partial;
  }
  return finalize(total / (mu_in * mu_out), m);
}

// ---------------------------------------------------------------------------

namespace {

bool same_state(const PureState& a, const PureState& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ga = std::get_if<GaussianState>(&a)) {
    const auto& gb = std::get<GaussianState>(b);
    return ga->omega == gb.omega && ga->delta == gb.delta && ga->t == gb.t && ga->pol == gb.pol;
  }
  const auto& ca = std::get<FiniteRankState>(a).coeffs;
  const auto& cb = std::get<FiniteRankState>(b).coeffs;
  return ca.size() == cb.size() && ca == cb;
}

}  // namespace

EnsembleInput EnsembleInput::product(const std::vector<MixedState>& photons) {
  EnsembleInput out;
  std::vector<std::vector<int>> atom_of(photons.size());
  std::vector<int> members;
  for (std::size_t a = 0; a < photons.size(); ++a) {
    members.push_back(photons[a].size());
    for (const auto& term : photons[a].terms) {
      int found = -1;
      for (std::size_t i = 0; i < out.atoms.size(); ++i) {
        if (same_state(out.atoms[i], term.state)) found = static_cast<int>(i);
      }
      if (found < 0) {
        found = static_cast<int>(out.atoms.size());
        out.atoms.push_back(term.state);
      }
      atom_of[a].push_back(found);
    }
  }
  if (photons.empty()) {
    out.terms.push_back({1.0, {{{}, Complex(1.0)}}});
    return out;
  }
  for_each_tuple(members, [&](const std::vector<int>& pick) {
    Term t;
    std::vector<int> idx;
    for (std::size_t a = 0; a < photons.size(); ++a) {
      t.weight *= photons[a].terms[pick[a]].weight;
      idx.push_back(atom_of[a][pick[a]]);
    }
    t.coeffs.emplace_back(std::move(idx), Complex(1.0));
    out.terms.push_back(std::move(t));
  });
  return out;
}

void validate(const Experiment& e, double unitarity_tol) {
  validate_unitary(e.network, unitarity_tol);
  const int modes = static_cast<int>(e.network.rows());
  validate_occupation(e.input, modes);
  const int count = total_photons(e.input);
  if (!e.photons.empty() && static_cast<int>(e.photons.size()) != count) {
    throw ArgumentError("expected " + std::to_string(count) + " photon states, got " +
                        std::to_string(e.photons.size()));
  }
  for (const auto& p : e.photons) {
    for (const auto& t : p.terms) validate_state(t.state);
  }
  if (e.detectors.size() != 1 && static_cast<int>(e.detectors.size()) != modes) {
    throw ArgumentError("detector bank must have one entry or one per mode");
  }
  for (const auto& d : e.detectors) validate_detector(d);
}

namespace {

std::vector<MixedState> photons_of(const Experiment& e) {
  if (!e.photons.empty()) return e.photons;
  return std::vector<MixedState>(static_cast<std::size_t>(total_photons(e.input)),
                                 MixedState::pure(GaussianState{}));
}

JMatrix j_for(const Experiment& e, const std::vector<MixedState>& photons, const Occupation& m) {
  bool all_pure = true;
  for (const auto& p : photons) all_pure = all_pure && p.is_pure();
  if (all_pure) {
    std::vector<PureState> pure;
    for (const auto& p : photons) pure.push_back(p.terms.front().state);
    return build_pure(pure, e.detectors, e.input, m);
  }
  return build_mixed(photons, e.detectors, e.input, m);
}

}  // namespace

ProbabilityResult compute_probability(const Experiment& e, Engine engine, const Occupation& m) {
  const auto photons = photons_of(e);
  switch (engine) {
    case Engine::kJMatrix:
      return prob_jmatrix(j_for(e, photons, m), e.network, e.input, m);
    case Engine::kPermanentBasis:
      return prob_permanent_basis(photons, e.detectors, e.network, e.input, m);
    case Engine::kGeneral:
      return prob_general(e.ensemble ? *e.ensemble : EnsembleInput::product(photons), e.detectors,
                          e.network, e.input, m);
    case Engine::kClassical:
      return prob_classical(e.network, e.input, m);
    case Engine::kIdeal:
      return prob_ideal_indistinguishable(e.network, e.input, m);
    case Engine::kOracle:
      return prob_oracle(e.ensemble ? *e.ensemble : EnsembleInput::product(photons), e.detectors,
                         e.network, e.input, m);
  }
  throw ArgumentError("unknown engine");
}

Distribution compute_distribution(const Experiment& e, Engine engine, int threads) {
  const auto outputs =
      enumerate_outputs(static_cast<int>(e.network.rows()), total_photons(e.input));
  const auto photons = photons_of(e);
  const std::optional<EnsembleInput> ensemble =
      (engine == Engine::kGeneral || engine == Engine::kOracle)
          ? std::optional<EnsembleInput>(e.ensemble ? *e.ensemble : EnsembleInput::product(photons))
          : std::nullopt;
  std::optional<JMatrix> shared_j;
  if (engine == Engine::kJMatrix && is_uniform(e.detectors)) {
    shared_j = j_for(e, photons, outputs.front());
  }
  // The lazy cycle-trace cache is not thread safe.
  if (shared_j && shared_j->storage() == JMatrix::Storage::kLazy) threads = 1;

  auto evaluate = [&](const Occupation& m) {
    switch (engine) {
      case Engine::kJMatrix:
        return prob_jmatrix(shared_j ? *shared_j : j_for(e, photons, m), e.network, e.input, m);
      case Engine::kPermanentBasis:
        return prob_permanent_basis(photons, e.detectors, e.network, e.input, m);
      case Engine::kGeneral:
        return prob_general(*ensemble, e.detectors, e.network, e.input, m);
      case Engine::kOracle:
        return prob_oracle(*ensemble, e.detectors, e.network, e.input, m);
      default:
        return compute_probability(e, engine, m);
    }
  };

  Distribution d;
  d.input = e.input;
  d.engine = engine;
  d.outputs.resize(outputs.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(outputs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < outputs.size(); ++i) d.outputs[i] = evaluate(outputs[i]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < outputs.size(); i += workers) {
            d.outputs[i] = evaluate(outputs[i]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
  for (const auto& r : d.outputs) d.sum += r.p;
  return d;
}

NormalizationReport normalization_report(const Experiment& e, Engine engine, int threads) {
  const Distribution d = compute_distribution(e, engine, threads);
  return {d.sum, std::abs(d.sum - 1.0)};
}

}  // namespace indist
