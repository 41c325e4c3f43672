#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace berglab {

enum class Command { kKernel, kMoments, kOracle, kAsymptotics, kSweep, kVerify };

std::string_view to_string(Command command) noexcept;

/// A validated run description. Optional fields are those the command may
/// leave to its defaults; render_config writes only what is set, so a
/// rendered config parses back to an equal value.
struct RunConfig {
  Command command = Command::kKernel;
  std::string geometry;
  std::string weight;
  std::string kind;     // holomorphic | harmonic
  std::string theorem;  // 1 | 2 | 3 | origin | holo
  std::string suite;
  std::string source;   // series | oracle
  std::optional<double> alpha;
  std::vector<double> alphas;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> t;
  std::optional<double> y;
  std::optional<int> kmax;
  double tol = 1e-12;
  std::string out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Command line: `<command> [--flag value ...]`, optionally `--config file`
/// holding a JSON object with the same keys (plus "command"). Flags win over
/// file values. Throws ParseError (naming the key) or ValidationError.
RunConfig parse_config(const std::vector<std::string>& args);

/// The JSON form alone.
RunConfig parse_config_text(std::string_view json);

/// JSON object with every set field.
std::string render_config(const RunConfig& config);

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConvergence = 3;

/// Runs a parsed config, writing CSV to `out` (or to config.out when set).
/// Library errors propagate; see run_main for the exit-code mapping.
int run(const RunConfig& config, std::ostream& out);

/// Full front end: parses argv, runs, maps failures to exit codes and writes
/// diagnostics to `err`.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace berglab
