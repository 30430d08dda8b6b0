#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace halfcube::cli {

enum class Format { kJsonl, kCsv };

struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<int> dim;
  std::optional<std::string> face;
  std::optional<int> n_max;
  bool verify = false;
  bool certify = false;
  bool oracle = false;
  bool force = false;
  bool include_k_eq_n = false;
  Format format = Format::kJsonl;
  std::string out_path;
  int jobs = 1;
  int verbosity = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Largest n for which the oracle runs without --force.
inline constexpr int kOracleCap = 6;
/// Largest n for which `betti` builds the matching without --force.
inline constexpr int kUnmatchedCap = 8;

/// Parses args (without the program name) and runs the command. Data goes to
/// --out when given and to `out` otherwise; summaries always go to `out` and
/// end with a RESULT line. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfcube::cli
