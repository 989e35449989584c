#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "indist/bosonsampling.hpp"
#include "indist/errors.hpp"
#include "indist/instances.hpp"
#include "indist/probability.hpp"
#include "indist/zeroprob.hpp"
#include "io.hpp"

namespace indist::cli {

namespace {

using io::Json;

template <typename F>
auto field(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SizeLimitError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError("--" + name + ": " + e.what());
  }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << '\n';
    return kSizeCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out.empty()) {
    out << text;
  } else {
    io::write_text(config.out, text);
  }
}

int engine_cap(Engine engine) {
  switch (engine) {
    case Engine::kJMatrix:
      return 8;
    case Engine::kOracle:
      return 6;
    default:
      return 1 << 20;
  }
}

Experiment load_experiment(const RunConfig& c, bool need_input = true) {
  Experiment e;
  e.network = field("network", [&] {
    CMatrix u = io::load_network(c.network);
    validate_unitary(u, c.tol);
    return u;
  });
  const int modes = static_cast<int>(e.network.rows());
  if (need_input || !c.input.empty()) {
    e.input = field("input", [&] {
      if (c.input.empty()) throw ValidationError("an input occupation is required");
      Occupation n = io::parse_int_list(c.input);
      validate_occupation(n, modes);
      if (total_photons(n) < 1) throw ValidationError("no photons in the input");
      return n;
    });
  }
  const int count = total_photons(e.input);
  if (!c.photons.empty()) {
    e.photons = field("photons", [&] {
      auto photons = io::photons_from_json(io::read_json_file(c.photons));
      if (photons.size() == 1 && count > 1) photons.assign(count, photons[0]);
      if (static_cast<int>(photons.size()) != count) {
        throw ValidationError("expected " + std::to_string(count) + " photons, got " +
                              std::to_string(photons.size()));
      }
      return photons;
    });
  }
  if (!c.detectors.empty()) {
    e.detectors = field("detectors", [&] {
      auto bank = io::detectors_from_json(io::read_json_file(c.detectors));
      if (bank.size() != 1 && static_cast<int>(bank.size()) != modes) {
        throw ValidationError("expected 1 or " + std::to_string(modes) + " detectors");
      }
      return bank;
    });
  }
  return e;
}

std::vector<MixedState> photons_or_default(const Experiment& e) {
  if (!e.photons.empty()) return e.photons;
  return std::vector<MixedState>(total_photons(e.input), MixedState::pure(GaussianState{}));
}

JMatrix j_for_dump(const Experiment& e, const Occupation& m) {
  const auto photons = photons_or_default(e);
  const Json first = io::photons_to_json({photons[0]});
  bool identical = is_uniform(e.detectors);
  for (const auto& rho : photons) identical = identical && io::photons_to_json({rho}) == first;
  if (identical) {
    return build_cycle_compressed(photons[0], e.detectors[0], static_cast<int>(photons.size()));
  }
  bool pure = true;
  for (const auto& rho : photons) pure = pure && rho.is_pure();
  if (pure) {
    std::vector<PureState> states;
    for (const auto& rho : photons) states.push_back(rho.terms[0].state);
    return build_pure(states, e.detectors, e.input, m);
  }
  return build_mixed(photons, e.detectors, e.input, m);
}

}  // namespace

int cmd_distribution(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Engine engine = field("engine", [&] { return engine_from_string(c.engine); });
    Experiment e = load_experiment(c);
    const int count = total_photons(e.input);
    if (count > engine_cap(engine)) {
      throw SizeLimitError("engine " + c.engine + " supports at most " +
                           std::to_string(engine_cap(engine)) + " photons");
    }
    field("photons", [&] { validate(e, c.tol); });
    if (c.threads < 1) throw ValidationError("--threads: must be at least 1");
    const Distribution d = compute_distribution(e, engine, c.threads);
    if (!c.dump_j.empty()) io::write_text(c.dump_j, io::dump(io::jmatrix_to_json(j_for_dump(e, d.outputs.front().m))));
    if (!c.save_network.empty()) io::write_text(c.save_network, io::dump(io::network_to_json(e.network)));
    emit(c, out, io::dump(io::distribution_to_json(d)));
    return static_cast<int>(kOk);
  });
}

int cmd_hom_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = c;
    if (cfg.input.empty()) cfg.input = "1,1";
    const Engine engine = field("engine", [&] { return engine_from_string(cfg.engine); });
    Experiment e = load_experiment(cfg);
    const auto taus = field("range", [&] {
      if (cfg.range.empty()) throw ValidationError("a delay range is required");
      return io::parse_range(cfg.range);
    });
    std::vector<GaussianState> base(2, GaussianState{});
    field("photons", [&] {
      if (total_photons(e.input) != 2) throw ValidationError("hom-scan needs exactly two photons");
      if (e.photons.empty()) return;
      for (int a = 0; a < 2; ++a) {
        const auto* g = e.photons[a].is_pure() ? std::get_if<GaussianState>(&e.photons[a].terms[0].state)
                                               : nullptr;
        if (g == nullptr) throw ValidationError("hom-scan needs pure Gaussian photons");
        base[a] = *g;
      }
    });
    std::ostringstream csv;
    csv << "tau,p_coincidence\n";
    for (double tau : taus) {
      GaussianState delayed = base[1];
      delayed.t += tau;
      e.photons = {MixedState::pure(base[0]), MixedState::pure(delayed)};
      field("photons", [&] { validate(e, cfg.tol); });
      const Distribution d = compute_distribution(e, engine, cfg.threads);
      double p = 0.0;
      for (const auto& r : d.outputs) {
        if (*std::max_element(r.m.begin(), r.m.end()) <= 1) p += r.p;
      }
      csv << io::csv_number(tau) << ',' << io::csv_number(p) << '\n';
    }
    emit(cfg, out, csv.str());
    return static_cast<int>(kOk);
  });
}

int cmd_purity(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto gammas = field("range", [&] {
      auto g = io::parse_range(c.range.empty() ? "0:0.95:20" : c.range);
      for (double x : g) {
        if (!(x >= 0.0 && x < 1.0)) throw ValidationError("gamma must lie in [0, 1)");
      }
      return g;
    });
    const auto ns = field("n-list", [&] {
      auto n = io::parse_int_list(c.n_list);
      for (int x : n) {
        if (x < 1) throw ValidationError("photon numbers must be positive");
      }
      return n;
    });
    std::ostringstream csv;
    csv << "gamma,N,purity,trace\n";
    for (const PurityRow& r : purity_curve(ns, gammas)) {
      csv << io::csv_number(r.gamma) << ',' << r.n << ',' << io::csv_number(r.purity) << ','
          << io::csv_number(r.trace) << '\n';
    }
    emit(c, out, csv.str());
    return static_cast<int>(kOk);
  });
}

int cmd_suppress(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = c;
    const CMatrix u = field("network", [&] {
      CMatrix m = io::load_network(cfg.network);
      validate_unitary(m, cfg.tol);
      return m;
    });
    if (cfg.input.empty()) {
      cfg.input = "1";
      for (Eigen::Index i = 1; i < u.rows(); ++i) cfg.input += ",1";
    }
    const Experiment e = load_experiment(cfg);
    GroupSpec spec;
    spec.labels = field("groups", [&] {
      if (cfg.groups.empty()) return std::vector<int>(total_photons(e.input), 0);
      return io::parse_int_list(cfg.groups);
    });
    const auto records = field("groups", [&] { return suppression_scan(u, e.input, spec); });

    const std::string report = io::dump(io::suppression_to_json(records));
    if (cfg.out.empty()) {
      out << report;
    } else {
      io::write_text(cfg.out, report);
      out << "m\tmax|Y|";
      for (double s : kDistinguishabilityGrid) out << "\tP(s=" << s << ')';
      out << "\tverdict\n";
      for (const auto& r : records) {
        for (std::size_t i = 0; i < r.m.size(); ++i) out << (i ? "," : "") << r.m[i];
        out << '\t' << io::csv_number(r.max_amplitude);
        for (double p : r.probabilities) out << '\t' << io::csv_number(p);
        out << '\t' << to_string(r.verdict) << '\n';
      }
    }
    int code = kOk;
    for (const auto& r : records) {
      if (r.violation) {
        err << "violation: suppressed output keeps a nonzero probability\n"
            << io::dump(io::record_to_json(r));
        code = kViolation;
      }
    }
    return code;
  });
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.instances < 1) throw ValidationError("--instances: must be at least 1");
    if (c.threads < 1) throw ValidationError("--threads: must be at least 1");
    double equivalence = 0.0;
    double min_eig = INFINITY;
    double normalization = 0.0;
    bool normalization_ok = true;
    int negative = 0;
    const std::vector<Engine> engines = {Engine::kJMatrix, Engine::kPermanentBasis, Engine::kGeneral,
                                         Engine::kOracle};
    for (int i = 0; i < c.instances; ++i) {
      const RandomInstance inst = random_instance(c.seed + static_cast<std::uint64_t>(i));
      const Experiment& e = inst.experiment;
      std::vector<Distribution> ds;
      for (Engine engine : engines) ds.push_back(compute_distribution(e, engine, c.threads));

      for (std::size_t k = 0; k < ds[0].outputs.size(); ++k) {
        const Occupation& m = ds[0].outputs[k].m;
        JMatrix j = build_mixed(e.photons, e.detectors, e.input, m);
        if (c.inject_fault) {
          CMatrix dense = j.to_dense();
          dense(0, 0) = -dense(0, 0);
          j = JMatrix::dense(dense, j.context(), j.context_free());
          try {
            ds[0].outputs[k] = prob_jmatrix(j, e.network, e.input, m);
          } catch (const ValidationError&) {
            ++negative;
          }
        }
        min_eig = std::min(min_eig, min_eigenvalue(j));
      }
      double sum = 0.0;
      for (const auto& r : ds[0].outputs) sum += r.p;
      for (std::size_t a = 0; a < ds.size(); ++a) {
        for (std::size_t b = a + 1; b < ds.size(); ++b) {
          for (std::size_t k = 0; k < ds[a].outputs.size(); ++k) {
            equivalence = std::max(equivalence, std::abs(ds[a].outputs[k].p - ds[b].outputs[k].p));
          }
        }
      }
      if (inst.detector_kind == "ideal") {
        normalization = std::max(normalization, std::abs(sum - 1.0));
        normalization_ok = normalization_ok && std::abs(sum - 1.0) < 1e-9;
      } else {
        normalization_ok = normalization_ok && sum <= 1.0 + 1e-9;
      }
    }

    double purity_dev = 0.0;
    for (int n = 2; n <= kMaxEnumeratedN; ++n) {
      for (int g = 1; g <= 9; ++g) {
        const BosonSamplingParams p{n, 0.1 * g};
        purity_dev = std::max(purity_dev, std::abs(purity_closed(p).trace - purity_direct(p).trace));
      }
    }

    Json checks = Json::array();
    checks.push_back(Json{{"name", "engine-equivalence"}, {"passed", equivalence < 1e-9 && negative == 0},
                           {"maxDeviation", equivalence}, {"negativeProbabilities", negative}});
    checks.push_back(Json{{"name", "psd"}, {"passed", min_eig >= -kPsdTolerance}, {"minEigenvalue", min_eig}});
    checks.push_back(Json{{"name", "normalization"}, {"passed", normalization_ok}, {"maxDeviation", normalization}});
    checks.push_back(Json{{"name", "purity"}, {"passed", purity_dev < 1e-10}, {"maxDeviation", purity_dev}});
    bool passed = true;
    for (const Json& check : checks) passed = passed && check.at("passed").get<bool>();
    const Json report{{"seed", c.seed}, {"instances", c.instances}, {"faultInjected", c.inject_fault},
                      {"checks", checks}, {"passed", passed}};
    emit(c, out, io::dump(report));
    if (!passed) err << "verification failed\n";
    return static_cast<int>(passed ? kOk : kVerifyFailed);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-photon output probabilities with partially distinguishable photons"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--network", c.network, "JSON file, fourier:M or haar:M:seed");
    sub->add_option("--input", c.input, "input occupation, e.g. 1,1,0");
    sub->add_option("--photons", c.photons, "photon specification file");
    sub->add_option("--detectors", c.detectors, "detector specification file");
    sub->add_option("--engine", c.engine, "jmatrix|permanent|general|classical|ideal|oracle");
    sub->add_option("--out", c.out, "output file");
    sub->add_option("--threads", c.threads, "worker threads");
    sub->add_option("--tol", c.tol, "unitarity tolerance");
  };

  CLI::App* distribution = app.add_subcommand("distribution", "full output distribution (JSON)");
  common(distribution);
  distribution->add_option("--dump-j", c.dump_j, "write the J matrix of the first output");
  distribution->add_option("--save-network", c.save_network, "write the network as JSON");

  CLI::App* hom = app.add_subcommand("hom-scan", "coincidence probability against delay (CSV)");
  common(hom);
  hom->add_option("--range", c.range, "delays start:stop:count");

  CLI::App* purity = app.add_subcommand("purity", "purity of the boson sampling model (CSV)");
  purity->add_option("--range", c.range, "gamma grid start:stop:count");
  purity->add_option("--n-list", c.n_list, "photon numbers, e.g. 2,4,10");
  purity->add_option("--out", c.out, "output file");

  CLI::App* suppress = app.add_subcommand("suppress", "suppression scan (JSON)");
  common(suppress);
  suppress->add_option("--groups", c.groups, "group label per photon, e.g. 0,0,1");

  CLI::App* verify = app.add_subcommand("verify", "cross-engine and invariant checks (JSON)");
  verify->add_option("--seed", c.seed, "first instance seed");
  verify->add_option("--instances", c.instances, "number of random instances");
  verify->add_option("--threads", c.threads, "worker threads");
  verify->add_option("--out", c.out, "output file");
  verify->add_flag("--inject-fault", c.inject_fault, "corrupt J entries to exercise the checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  if (distribution->parsed()) return cmd_distribution(c, out, err);
  if (hom->parsed()) return cmd_hom_scan(c, out, err);
  if (purity->parsed()) return cmd_purity(c, out, err);
  if (suppress->parsed()) return cmd_suppress(c, out, err);
  return cmd_verify(c, out, err);
}

}  // namespace indist::cli
