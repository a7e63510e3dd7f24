#include "simplexgeo/error.hpp"
#include "simplexgeo/tools/runner.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace simplexgeo;
using namespace simplexgeo::tools;

constexpr int kConfigExit = 2;

std::uint64_t parse_seed(const std::string& text, const char* source) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(source) + " must be a nonnegative integer, got '" + text + "'");
  }
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplexgeo: Fisher-Rao geometry experiments on the probability simplex"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  long long dim = 0;
  std::string c_text, p0_text, v0_text, method, format, out_path, config_path, seed_text;
  double q = 0, t_max = 0, dt = 0, tol = 0;
  bool no_timestamp = false;

  auto* o_dim = app.add_option("--dim", dim, "Truncation dimension N (>= 2)");
  auto* o_c = app.add_option("--c", c_text, "Objective coefficients: uniform | geometric:<r> | explicit:<v,...> | file:<path>");
  auto* o_p0 = app.add_option("--p0", p0_text, "Initial point spec (normalized to the simplex)");
  auto* o_v0 = app.add_option("--v0", v0_text, "Initial velocity spec (projected to zero sum)");
  auto* o_q = app.add_option("--q", q, "Exponent q > 1");
  auto* o_tmax = app.add_option("--t-max", t_max, "Final time");
  auto* o_dt = app.add_option("--dt", dt, "Time step / sampling interval");
  auto* o_tol = app.add_option("--tol", tol, "LP stopping tolerance on |p - e_0|_1");
  auto* o_method = app.add_option("--method", method, "Flow evaluation: closed | rk4")
                       ->check(CLI::IsMember({"closed", "rk4"}));
  auto* o_seed = app.add_option("--seed", seed_text, "Random seed (overrides SIMPLEXGEO_SEED)");
  auto* o_out = app.add_option("--out", out_path, "Output file (default: standard output)");
  auto* o_format = app.add_option("--format", format, "Output format: csv | json")
                       ->check(CLI::IsMember({"csv", "json"}));
  auto* o_config = app.add_option("--config", config_path, "JSON config file with RunConfig fields");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field from JSON output");

  const char* kCommands[] = {"flow", "geodesic", "lp", "isometry", "bracket", "integrability",
                             "check-all"};
  for (const char* name : kCommands) app.add_subcommand(name, std::string("Run the ") + name + " experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  const std::string command_name = app.get_subcommands().front()->get_name();
  RunConfig config;
  try {
    config.command = *parse_command(command_name);
    if (const char* env = std::getenv("SIMPLEXGEO_SEED"); env != nullptr && *env != '\0') {
      config.seed = parse_seed(env, "SIMPLEXGEO_SEED");
    }
    if (o_config->count() > 0) {
      apply_config_json(config, read_file(config_path));
      config.command = *parse_command(command_name);
    }
    if (o_dim->count() > 0) config.dim = static_cast<Index>(dim);
    if (o_c->count() > 0) config.c_spec = parse_sequence_spec(c_text, SpecRole::Objective);
    if (o_p0->count() > 0) config.p0_spec = parse_sequence_spec(p0_text, SpecRole::Point);
    if (o_v0->count() > 0) config.v0_spec = parse_sequence_spec(v0_text, SpecRole::Velocity);
    if (o_q->count() > 0) config.q = q;
    if (o_tmax->count() > 0) config.t_max = t_max;
    if (o_dt->count() > 0) config.dt = dt;
    if (o_tol->count() > 0) config.tol = tol;
    if (o_method->count() > 0) config.method = method == "closed" ? Method::Closed : Method::Rk4;
    if (o_seed->count() > 0) config.seed = parse_seed(seed_text, "--seed");
    if (o_out->count() > 0) config.out_path = out_path;
    if (o_format->count() > 0) config.format = format == "csv" ? Format::Csv : Format::Json;
    if (no_timestamp) config.timestamp = false;
  } catch (const ConfigError& e) {
    std::cerr << command_name << " config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const Error& e) {
    std::cerr << command_name << " config error: " << e.what() << "\n";
    return kConfigExit;
  }

  const RunResult result = run(config);
  if (config.out_path.empty()) {
    std::cout << result.output << std::flush;
    std::cerr << result.summary << "\n";
  } else {
    std::cout << result.summary << "\n";
  }
  return result.exit_code;
}
