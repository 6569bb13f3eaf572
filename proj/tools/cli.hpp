#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pentachain::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitEngineDisagreement = 3,
  kExitFormulaMismatch = 4,
};

/// Bad flags or an invalid flag combination; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a command needs, after parsing and before any computation.
struct RunConfig {
  std::string command;
  std::size_t n = 1;
  std::string p1 = "1/2";
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  unsigned workers = 1;
  std::size_t enumeration_cap = 22;
  std::string format;  // json | csv | text; empty picks the command default
  std::string output;           // empty: stdout

  std::vector<std::string> indices;  // index keys; empty means the command default
  std::string blueprint;             // blueprint JSON path, "-" for stdin
  std::string mode;                  // M1 | M2: uniform blueprint instead of --blueprint
  std::size_t verify_cap = 12;
  std::string metric = "distance";   // distance | resistance
  std::string engine = "structured"; // structured | bfs | laplacian
  std::string standardization = "verified";
  double alpha = 0.01;
  std::size_t nmax = 8;
  std::vector<std::string> p1_list;
  std::string grid;  // "n=A..B"
  bool expect_only = false;
  bool normality = false;
  std::string moments = "published";  // published | verified, for grid export
  bool pretty = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& doc);

/// Rejects out-of-range values and invalid combinations with a UsageError that
/// names the violated bound.
void validate(const RunConfig& config);

/// Parses `args` (without the program name), runs the command and returns the
/// process exit code.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pentachain::cli
