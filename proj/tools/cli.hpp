#ifndef INDIST_TOOLS_CLI_HPP_
#define INDIST_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "indist/network.hpp"

namespace indist::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInvalid = 2,
  kSizeCap = 3,
  kViolation = 4,
};

struct RunConfig {
  std::string subcommand;
  std::string network = "fourier:2";
  std::string input;      // comma-separated occupation
  std::string photons;    // JSON file
  std::string detectors;  // JSON file
  std::string engine = "jmatrix";
  std::string out;        // empty: standard output
  std::string range;      // start:stop:count
  std::string n_list = "2,4,10,20,30";
  std::string groups;     // comma-separated group label per photon
  std::string dump_j;     // JSON file for the J matrix
  std::string save_network;
  std::uint64_t seed = 1;
  int instances = 20;
  int threads = 1;
  double tol = kUserUnitarityTol;
  bool inject_fault = false;
};

int cmd_distribution(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_hom_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_purity(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_suppress(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and runs a subcommand. Errors are reported on
/// `err` and mapped to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace indist::cli

#endif  // INDIST_TOOLS_CLI_HPP_
