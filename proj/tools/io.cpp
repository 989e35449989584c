#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "indist/errors.hpp"
#include "indist/network.hpp"

namespace indist::io {

namespace {

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("complex numbers are [re, im] pairs");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json complex_to(Complex z) { return Json::array({z.real(), z.imag()}); }

CMatrix matrix_from(const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw ValidationError("matrix needs at least one row");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.at(0).size());
  CMatrix out(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Json& row = rows.at(i);
    if (static_cast<Eigen::Index>(row.size()) != c) throw ValidationError("ragged matrix rows");
    for (Eigen::Index k = 0; k < c; ++k) out(i, k) = complex_from(row.at(k));
  }
  return out;
}

Json matrix_to(const CMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(complex_to(a(i, k)));
    rows.push_back(row);
  }
  return rows;
}

PureState pure_from(const Json& j) {
  if (j.contains("gaussian")) {
    const Json& g = j.at("gaussian");
    GaussianState s;
    s.omega = g.value("omega", 0.0);
    s.delta = g.value("delta", 1.0);
    s.t = g.value("t", 0.0);
    s.pol = g.value("pol", 0);
    return s;
  }
  if (j.contains("coeffs")) {
    const Json& c = j.at("coeffs");
    CVector v(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(c.at(i));
    return FiniteRankState{v};
  }
  throw ValidationError("photon entry needs \"gaussian\" or \"coeffs\"");
}

Json pure_to(const PureState& s) {
  if (const auto* g = std::get_if<GaussianState>(&s)) {
    return Json{{"gaussian", {{"omega", g->omega}, {"delta", g->delta}, {"t", g->t}, {"pol", g->pol}}}};
  }
  const auto& f = std::get<FiniteRankState>(s);
  Json c = Json::array();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) c.push_back(complex_to(f.coeffs(i)));
  return Json{{"coeffs", c}};
}

std::string number(double x, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void dump_into(const Json& j, std::ostringstream& os, int indent) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      os << number(j.get<double>(), 17);
      break;
    case Json::value_t::array: {
      bool flat = true;
      for (const Json& e : j) flat = flat && e.is_primitive();
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) os << (flat ? ", " : ",");
        if (!flat) os << '\n' << pad;
        dump_into(j[i], os, indent + 2);
      }
      if (!flat && !j.empty()) os << '\n' << std::string(indent, ' ');
      os << ']';
      break;
    }
    case Json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        os << (first ? "" : ",") << '\n' << pad << Json(it.key()).dump() << ": ";
        dump_into(it.value(), os, indent + 2);
        first = false;
      }
      if (!j.empty()) os << '\n' << std::string(indent, ' ');
      os << '}';
      break;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw ValidationError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &start, &stop, &count, &tail) != 3 || count < 1) {
    throw ValidationError("range must be start:stop:count, got '" + text + "'");
  }
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }
  return out;
}

CMatrix load_network(const std::string& source) {
  if (source.rfind("fourier:", 0) == 0) {
    const auto parts = parse_int_list(source.substr(8));
    if (parts.size() != 1 || parts[0] < 1) throw ValidationError("expected fourier:M");
    return fourier(parts[0]);
  }
  if (source.rfind("haar:", 0) == 0) {
    const std::string rest = source.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ValidationError("expected haar:M:seed");
    const auto m = parse_int_list(rest.substr(0, colon));
    const auto seed = parse_int_list(rest.substr(colon + 1));
    if (m.size() != 1 || seed.size() != 1 || m[0] < 1 || seed[0] < 0) {
      throw ValidationError("expected haar:M:seed");
    }
    return random_unitary(m[0], static_cast<std::uint64_t>(seed[0]));
  }
  return network_from_json(read_json_file(source));
}

Json network_to_json(const CMatrix& u) { return Json{{"m", u.rows()}, {"rows", matrix_to(u)}}; }

CMatrix network_from_json(const Json& j) {
  try {
    const CMatrix u = matrix_from(j.at("rows"));
    if (u.rows() != j.at("m").get<int>() || u.cols() != u.rows()) {
      throw ValidationError("network must be an m x m matrix");
    }
    return u;
  } catch (const Json::exception& e) {
    throw ValidationError(e.what());
  }
}

std::vector<MixedState> photons_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("photon file must hold a list");
  std::vector<MixedState> out;
  try {
    for (const Json& entry : j) {
      if (entry.contains("ensemble")) {
        MixedState rho;
        for (const Json& t : entry.at("ensemble")) rho.terms.push_back({t.at("weight").get<double>(), pure_from(t)});
        out.push_back(rho);
      } else if (entry.contains("jitter")) {
        const PureState s = pure_from(entry);
        const auto* g = std::get_if<GaussianState>(&s);
        if (g == nullptr) throw ValidationError("jitter needs a gaussian photon");
        out.push_back(jittered_arrival(*g, entry.at("jitter").get<double>(),
                                       entry.value("nodes", kDefaultQuadratureNodes)));
      } else {
        out.push_back(MixedState::pure(pure_from(entry)));
      }
    }
  } catch (const Json::exception& e) {
    throw ValidationError(e.what());
  }
  return out;
}

Json photons_to_json(const std::vector<MixedState>& photons) {
  Json out = Json::array();
  for (const MixedState& rho : photons) {
    if (rho.is_pure() && rho.terms[0].weight == 1.0) {
      out.push_back(pure_to(rho.terms[0].state));
      continue;
    }
    Json terms = Json::array();
    for (const auto& t : rho.terms) {
      Json e = pure_to(t.state);
      e["weight"] = t.weight;
      terms.push_back(e);
    }
    out.push_back(Json{{"ensemble", terms}});
  }
  return out;
}

DetectorBank detectors_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("detector file must hold a non-empty list");
  DetectorBank bank;
  try {
    for (const Json& entry : j) {
      const std::string kind = entry.at("kind").get<std::string>();
      DetectorModel d;
      if (kind == "ideal") {
        d = DetectorModel::ideal();
      } else if (kind == "flat") {
        d = DetectorModel::flat(entry.at("eta").get<double>());
      } else if (kind == "gaussianBand") {
        d = DetectorModel::gaussian_band(entry.at("center").get<double>(),
                                         entry.at("width").get<double>(), entry.value("peak", 1.0));
      } else if (kind == "matrix") {
        d = DetectorModel::matrix(matrix_from(entry.at("op")));
      } else {
        throw ValidationError("unknown detector kind '" + kind + "'");
      }
      if (entry.contains("polEfficiency")) {
        d.pol_efficiency = {entry.at("polEfficiency").at(0).get<double>(),
                            entry.at("polEfficiency").at(1).get<double>()};
      }
      bank.push_back(d);
    }
  } catch (const Json::exception& e) {
    throw ValidationError(e.what());
  }
  return bank;
}

Json detectors_to_json(const DetectorBank& bank) {
  Json out = Json::array();
  for (const DetectorModel& d : bank) {
    Json e;
    switch (d.kind) {
      case DetectorModel::Kind::kIdeal:
        e = {{"kind", "ideal"}};
        break;
      case DetectorModel::Kind::kFlat:
        e = {{"kind", "flat"}, {"eta", d.efficiency}};
        break;
      case DetectorModel::Kind::kGaussianBand:
        e = {{"kind", "gaussianBand"}, {"center", d.center}, {"width", d.width}, {"peak", d.peak}};
        break;
      case DetectorModel::Kind::kMatrix:
        e = {{"kind", "matrix"}, {"op", matrix_to(d.op)}};
        break;
    }
    if (d.kind != DetectorModel::Kind::kIdeal && d.kind != DetectorModel::Kind::kMatrix) {
      e["polEfficiency"] = {d.pol_efficiency[0], d.pol_efficiency[1]};
    }
    out.push_back(e);
  }
  return out;
}

Json distribution_to_json(const Distribution& d) {
  Json outputs = Json::array();
  for (const ProbabilityResult& r : d.outputs) outputs.push_back(Json{{"m", r.m}, {"p", r.p}});
  return Json{{"input", d.input}, {"outputs", outputs}, {"sum", d.sum}, {"engine", to_string(d.engine)}};
}

Json jmatrix_to_json(const JMatrix& j) {
  Json out{{"n", j.n()}, {"order", "lex"}};
  if (j.storage() == JMatrix::Storage::kCycleCompressed) {
    Json cycles = Json::array();
    for (const auto& [ct, value] : j.cycle_values()) {
      cycles.push_back(Json{{"cycleType", ct.counts}, {"value", complex_to(value)}});
    }
    out["cycleCompressed"] = cycles;
  }
  const CMatrix dense = j.to_dense();
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) entries.push_back(complex_to(dense(r, c)));
  }
  out["entries"] = entries;
  return out;
}

Json record_to_json(const SuppressionRecord& r) {
  return Json{{"m", r.m},
              {"verdict", to_string(r.verdict)},
              {"maxAmplitude", r.max_amplitude},
              {"classical", r.classical},
              {"overlaps", r.overlaps},
              {"probabilities", r.probabilities},
              {"violation", r.violation}};
}

Json suppression_to_json(const std::vector<SuppressionRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) out.push_back(record_to_json(r));
  return out;
}

std::string dump(const Json& j) {
  std::ostringstream os;
  dump_into(j, os, 0);
  os << '\n';
  return os.str();
}

std::string csv_number(double x) { return number(x, 12); }

}  // namespace indist::io
