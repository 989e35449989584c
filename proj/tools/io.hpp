#ifndef INDIST_TOOLS_IO_HPP_
#define INDIST_TOOLS_IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "indist/jmatrix.hpp"
#include "indist/probability.hpp"
#include "indist/zeroprob.hpp"

namespace indist::io {

using Json = nlohmann::json;

Json read_json_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// "1,1,0" -> {1, 1, 0}.
std::vector<int> parse_int_list(const std::string& text);

/// "start:stop:count", evenly spaced and inclusive of both ends.
std::vector<double> parse_range(const std::string& text);

/// Network source: a JSON file, "fourier:M" or "haar:M:seed".
CMatrix load_network(const std::string& source);
Json network_to_json(const CMatrix& u);
CMatrix network_from_json(const Json& j);

/// Photon entries: {"gaussian": {...}} or {"coeffs": [[re, im], ...]}, optionally
/// with "jitter" and "nodes" for a fluctuating arrival time, or
/// {"ensemble": [{"weight": w, <pure entry>}, ...]}.
std::vector<MixedState> photons_from_json(const Json& j);
Json photons_to_json(const std::vector<MixedState>& photons);

DetectorBank detectors_from_json(const Json& j);
Json detectors_to_json(const DetectorBank& bank);

Json distribution_to_json(const Distribution& d);
Json jmatrix_to_json(const JMatrix& j);
Json suppression_to_json(const std::vector<SuppressionRecord>& records);
Json record_to_json(const SuppressionRecord& r);

/// Pretty JSON, doubles printed with 17 significant digits.
std::string dump(const Json& j);
/// 12 significant digits, for CSV output.
std::string csv_number(double x);

}  // namespace indist::io

#endif  // INDIST_TOOLS_IO_HPP_
