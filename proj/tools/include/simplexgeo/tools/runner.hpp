#pragma once

// Command-line experiment runner: configuration, sequence-spec grammar,
// deterministic execution and CSV/JSON emission.

#include "simplexgeo/sequence.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace simplexgeo::tools {

enum class Command { Flow, Geodesic, Lp, Isometry, Bracket, Integrability, CheckAll };
enum class Method { Closed, Rk4 };
enum class Format { Csv, Json };

// Invalid or incomplete configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sequence specs are stored without a dimension (except explicit ones);
/// `run` binds them to `dim`.
struct RunConfig {
  Command command = Command::Flow;
  std::optional<Index> dim;
  std::optional<SequenceSpec> c_spec;
  std::optional<SequenceSpec> p0_spec;
  std::optional<SequenceSpec> v0_spec;
  double q = 2.0;
  double t_max = 10.0;
  double dt = 0.01;
  double tol = 1e-8;
  Method method = Method::Closed;
  std::uint64_t seed = 0;
  std::string out_path;  // empty: write to standard output
  Format format = Format::Csv;
  bool timestamp = true;
};

enum class SpecRole { Objective, Point, Velocity };

/// `uniform | geometric:<r> | explicit:<v1,v2,...> | file:<path>`. Objective
/// and velocity specs are never normalized; point specs are normalized onto
/// the simplex. A file holds either a JSON sequence spec or whitespace/comma
/// separated numbers. Throws Error(ParseError) with the offending position,
/// or Error(RatioOutOfRange).
SequenceSpec parse_sequence_spec(std::string_view text, SpecRole role);

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command command);

/// Applies a JSON config whose keys mirror RunConfig in snake case
/// (command, dim, c_spec, p0_spec, v0_spec, q, t_max, dt, tol, method, seed,
/// out_path, format, timestamp). Unknown keys or wrong types raise ConfigError.
void apply_config_json(RunConfig& config, const std::string& json_text);

// Shortest decimal string that reads back as the same double.
std::string format_double(double x);

// Writes through a temporary file in the target directory, then renames it
// into place, so `path` is either absent, the old file, or complete.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

struct RunResult {
  int exit_code = 0;    // 0 pass, 1 check failure or library error, 2 config error
  std::string summary;  // one line: command, N, key metric, PASS/FAIL
  std::string output;   // emitted document when out_path is empty
};

/// Executes the configured experiment. Never throws; failures are reported
/// through exit_code and summary.
RunResult run(const RunConfig& config);

}  // namespace simplexgeo::tools
