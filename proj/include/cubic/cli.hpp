#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubic/intersection.hpp"

namespace cubic {

struct RunConfig {
  std::string poly = "-1,-2,1";
  std::int64_t max_norm = 10000;
  long height_bound = 20;
  std::optional<std::string> eps1, eps2;
  std::vector<std::string> class_bases;  // "c0,c1,c2;c0,c1,c2;c0,c1,c2"
  int bins = 10;
  std::vector<double> cusp_heights{2.0, 3.0, 5.0};
  std::string out;     // empty: standard output
  std::string report;  // empty: no report file
  std::uint64_t seed = 1;
  std::int64_t modulus = 1;
  std::string input;  // CSV for the stats subcommand
  bool inject_wrong_lambda = false;
};

/// Exit codes of `run`; `verify` returns 0 or 1.
enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kInternalError = 3 };

/// Parses a class basis "c0,c1,c2;c0,c1,c2;c0,c1,c2" (elements in Z[alpha]).
ClassBasis parse_class_basis(const std::string& text);

/// Reads key=value lines ('#' comments allowed); keys are flag names
/// without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

int cmd_roots(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_ideals(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_units(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubic
