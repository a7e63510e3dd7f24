#include "simplexgeo/tools/runner.hpp"

#include "simplexgeo/connections.hpp"
#include "simplexgeo/error.hpp"
#include "simplexgeo/flows.hpp"
#include "simplexgeo/hamiltonian.hpp"
#include "simplexgeo/tools/checks.hpp"

#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace simplexgeo::tools {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kWhere = "cli_runner::parse_sequence_spec";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void parse_fail(std::size_t pos, const std::string& what) {
  raise(ErrorCode::ParseError, kWhere, "at position " + std::to_string(pos) + ": " + what);
}

Normalization role_normalization(SpecRole role) {
  return role == SpecRole::Point ? Normalization::ToSimplex : Normalization::None;
}

// Parses the whole of `token` (which starts at `pos` in the original text).
double parse_number(std::string_view token, std::size_t pos) {
  const auto first = token.find_first_not_of(" \t");
  const auto last = token.find_last_not_of(" \t");
  if (first == std::string_view::npos) parse_fail(pos, "expected a number");
  token = token.substr(first, last - first + 1);
  pos += first;
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    parse_fail(pos + static_cast<std::size_t>(ptr - token.data()),
               "expected a number, got '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) parse_fail(pos, "non-finite number");
  return value;
}

// Comma-separated list; every field must hold a number.
std::vector<double> parse_comma_list(std::string_view text, std::size_t offset) {
  std::vector<double> values;
  std::size_t i = 0;
  while (true) {
    std::size_t j = text.find(',', i);
    if (j == std::string_view::npos) j = text.size();
    values.push_back(parse_number(text.substr(i, j - i), offset + i));
    if (j == text.size()) break;
    i = j + 1;
  }
  return values;
}

// Numbers separated by any mix of whitespace and commas (file contents).
std::vector<double> parse_loose_list(std::string_view text) {
  constexpr std::string_view kSeparators = " \t\r\n,";
  std::vector<double> values;
  std::size_t i = text.find_first_not_of(kSeparators);
  while (i != std::string_view::npos) {
    std::size_t j = text.find_first_of(kSeparators, i);
    if (j == std::string_view::npos) j = text.size();
    values.push_back(parse_number(text.substr(i, j - i), i));
    i = text.find_first_not_of(kSeparators, j);
  }
  if (values.empty()) parse_fail(0, "no numbers found");
  return values;
}

SequenceSpec geometric_spec(double ratio, Normalization norm) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    raise(ErrorCode::RatioOutOfRange, kWhere,
          "geometric ratio " + format_double(ratio) + " is outside (0, 1)");
  }
  return SequenceSpec::geometric(ratio, 0, norm);
}

SequenceSpec spec_from_file(const std::string& path, std::size_t offset, SpecRole role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail(offset, "cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    SequenceSpec spec = sequence_spec_from_json(text);
    spec.normalization = role_normalization(role);
    if (spec.kind != SequenceKind::Explicit) spec.dim = 0;
    return spec;
  }
  try {
    return SequenceSpec::explicit_coords(parse_loose_list(text),
                                         role_normalization(role));
  } catch (const Error& e) {
    raise(ErrorCode::ParseError, kWhere, "in file '" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Output documents.

struct Table {
  std::vector<double> t;
  std::vector<Vector> p;
  std::vector<double> objective;
  std::vector<double> residual_l1;
};

struct Outcome {
  bool pass = false;
  std::string summary;
  std::optional<Table> table;
  Json report = Json::object();
};

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string render_csv(const Outcome& out, Index dim) {
  std::string s;
  if (out.table) {
    const Table& tab = *out.table;
    s += "t";
    for (Index i = 0; i < dim; ++i) s += ",p_" + std::to_string(i);
    s += ",objective,residual_l1\n";
    for (std::size_t r = 0; r < tab.t.size(); ++r) {
      s += format_double(tab.t[r]);
      for (Index i = 0; i < tab.p[r].size(); ++i) s += "," + format_double(tab.p[r][i]);
      s += "," + format_double(tab.objective[r]) + "," + format_double(tab.residual_l1[r]) + "\n";
    }
    return s;
  }
  auto scalar = [](const Json& v) -> std::string {
    if (v.is_null()) return "nan";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  if (out.report.contains("checks")) {
    s += "check,pass,metric,tolerance\n";
    for (const Json& c : out.report["checks"]) {
      s += c["name"].get<std::string>() + "," + (c["pass"].get<bool>() ? "true" : "false") + "," +
           scalar(c["metric"]) + "," + scalar(c["tolerance"]) + "\n";
    }
    return s;
  }
  s += "key,value\n";
  for (const auto& [key, value] : out.report.items()) {
    if (value.is_primitive()) s += key + "," + scalar(value) + "\n";
  }
  return s;
}

std::string render_json(const Outcome& out, const RunConfig& config, Index dim) {
  Json doc = Json::object();
  doc["command"] = to_string(config.command);
  doc["dim"] = dim;
  doc["seed"] = config.seed;
  if (out.table) {
    const Table& tab = *out.table;
    Json t = Json::array(), p = Json::array(), obj = Json::array(), res = Json::array();
    for (std::size_t r = 0; r < tab.t.size(); ++r) {
      t.push_back(number(tab.t[r]));
      Json row = Json::array();
      for (Index i = 0; i < tab.p[r].size(); ++i) row.push_back(number(tab.p[r][i]));
      p.push_back(std::move(row));
      obj.push_back(number(tab.objective[r]));
      res.push_back(number(tab.residual_l1[r]));
    }
    doc["t"] = std::move(t);
    doc["p"] = std::move(p);
    doc["objective"] = std::move(obj);
    doc["residual_l1"] = std::move(res);
  }
  doc["report"] = out.report;
  if (config.timestamp) doc["timestamp"] = timestamp_now();
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Configuration binding.

const char* flag_for(const char* field) {
  const std::string f = field;
  if (f == "c_spec") return "--c";
  if (f == "p0_spec") return "--p0";
  if (f == "v0_spec") return "--v0";
  return "--dim";
}

SequenceSpec bind_spec(const std::optional<SequenceSpec>& spec, const char* field, Index dim,
                       const RunConfig& config,
                       std::optional<SequenceSpec> fallback = std::nullopt) {
  if (!spec && !fallback) {
    throw ConfigError("command '" + to_string(config.command) + "' requires " + field + " (" +
                      flag_for(field) + ")");
  }
  SequenceSpec s = spec ? *spec : *fallback;
  if (s.kind == SequenceKind::Explicit) {
    if (static_cast<Index>(s.coords.size()) != dim) {
      throw ConfigError(std::string(field) + " lists " + std::to_string(s.coords.size()) +
                        " coordinates but dim is " + std::to_string(dim));
    }
    return s;
  }
  return s.with_dim(dim);
}

Index require_dim(const RunConfig& config) {
  if (!config.dim) {
    throw ConfigError("command '" + to_string(config.command) +
                      "' requires field 'dim' (--dim), which is missing");
  }
  if (*config.dim < 2) throw ConfigError("dim must be at least 2");
  return *config.dim;
}

void require_time_grid(const RunConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw ConfigError("dt must be positive");
  if (!(config.t_max >= 0.0) || !std::isfinite(config.t_max)) {
    throw ConfigError("t_max must be finite and nonnegative");
  }
  if (config.t_max / config.dt > 1e7) throw ConfigError("t_max / dt exceeds 1e7 rows");
}

std::string summary_line(const RunConfig& config, Index dim, const std::string& metrics,
                         bool pass) {
  return to_string(config.command) + " N=" + std::to_string(dim) + " " + metrics + " " +
         (pass ? "PASS" : "FAIL");
}

std::string kv(const std::string& key, double value) { return key + "=" + format_double(value); }

Json check_json(const CheckResult& c) {
  Json j = Json::object();
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["metric"] = number(c.metric);
  j["tolerance"] = c.tolerance;
  j["detail"] = c.detail;
  return j;
}

// ---------------------------------------------------------------------------
// Commands.

Outcome run_flow(const RunConfig& config, Index n) {
  require_time_grid(config);
  const LinearObjective obj(materialize(bind_spec(config.c_spec, "c_spec", n, config)));
  const SimplexPoint p0 = make_simplex_point(
      bind_spec(config.p0_spec, "p0_spec", n, config, SequenceSpec::uniform(0)));

  Trajectory traj;
  if (config.method == Method::Closed) {
    traj = sample_flow(obj, p0, config.t_max, config.dt);
  } else {
    traj = integrate_rk4(gradient_vector_field(obj), p0, config.t_max, config.dt);
    fill_objective(traj, obj);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      traj.diagnostics[i].residual_l1 =
          (traj.points[i].coords() - flow_closed_form(obj, p0, traj.times[i]).coords())
              .lpNorm<1>();
    }
  }

  Outcome out;
  Table tab;
  bool monotone = true;
  double max_residual = 0.0;
  double max_drift = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    tab.t.push_back(traj.times[i]);
    tab.p.push_back(traj.points[i].coords());
    tab.objective.push_back(traj.objective[i]);
    tab.residual_l1.push_back(traj.diagnostics[i].residual_l1);
    max_residual = std::max(max_residual, traj.diagnostics[i].residual_l1);
    max_drift = std::max(max_drift, traj.diagnostics[i].sum_drift);
    if (i > 0) {
      const double prev = traj.objective[i - 1];
      if (traj.objective[i] < prev - 1e-12 * std::max(1.0, std::abs(prev))) monotone = false;
    }
  }
  out.pass = monotone && max_residual <= 1e-6;
  const double final_objective = traj.objective.back();
  out.report["method"] = config.method == Method::Closed ? "closed" : "rk4";
  out.report["rows"] = traj.size();
  out.report["objective_initial"] = traj.objective.front();
  out.report["objective_final"] = final_objective;
  out.report["objective_nondecreasing"] = monotone;
  out.report["max_residual_l1"] = max_residual;
  out.report["max_sum_drift"] = max_drift;
  out.report["pass"] = out.pass;
  out.summary = summary_line(config, n,
                             "method=" + out.report["method"].get<std::string>() +
                                 " rows=" + std::to_string(traj.size()) + " " +
                                 kv("objective_final", final_objective) + " " +
                                 kv("max_residual_l1", max_residual),
                             out.pass);
  out.table = std::move(tab);
  return out;
}

Outcome run_geodesic(const RunConfig& config, Index n) {
  require_time_grid(config);
  const SimplexPoint p0 = make_simplex_point(
      bind_spec(config.p0_spec, "p0_spec", n, config, SequenceSpec::uniform(0)));
  const TangentVector v0 = make_tangent(p0, materialize(bind_spec(config.v0_spec, "v0_spec", n, config)));
  std::optional<LinearObjective> obj;
  if (config.c_spec) obj.emplace(materialize(bind_spec(config.c_spec, "c_spec", n, config)));

  const EGeodesic g = make_e_geodesic(p0, v0);
  const Curve curve = [&g](double t) { return e_geodesic_eval(g, t); };
  const auto steps = static_cast<std::size_t>(std::llround(config.t_max / config.dt));

  Outcome out;
  Table tab;
  double max_inf = 0.0;
  double max_l1 = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = k == steps ? config.t_max : static_cast<double>(k) * config.dt;
    const SimplexPoint p = e_geodesic_eval(g, t);
    const Vector residual = e_connection_residual(curve, t, kCurveStep);
    max_inf = std::max(max_inf, residual.lpNorm<Eigen::Infinity>());
    max_l1 = std::max(max_l1, residual.lpNorm<1>());
    tab.t.push_back(t);
    tab.objective.push_back(obj ? objective_value(*obj, p) : kNaN);
    tab.residual_l1.push_back(residual.lpNorm<1>());
    tab.p.push_back(p.coords());
  }
  out.pass = max_inf <= 1e-6;
  out.report["rows"] = tab.t.size();
  out.report["residual_step"] = kCurveStep;
  out.report["max_residual_inf"] = max_inf;
  out.report["max_residual_l1"] = max_l1;
  out.report["pass"] = out.pass;
  out.summary = summary_line(config, n,
                             "rows=" + std::to_string(tab.t.size()) + " " +
                                 kv("max_residual_inf", max_inf),
                             out.pass);
  out.table = std::move(tab);
  return out;
}

Outcome run_lp(const RunConfig& config, Index n) {
  if (!(config.tol > 0.0)) throw ConfigError("tol must be positive");
  const LinearObjective obj(materialize(bind_spec(config.c_spec, "c_spec", n, config,
                                             SequenceSpec::geometric(0.5, 0, Normalization::None))));
  const SimplexPoint p0 = make_simplex_point(
      bind_spec(config.p0_spec, "p0_spec", n, config, SequenceSpec::uniform(0)));
  const LpSolution sol = solve_lp(obj, p0, config.tol);
  const LpReport& rep = sol.report;

  Outcome out;
  Table tab;
  for (std::size_t i = 0; i < rep.horizons.size(); ++i) {
    const SimplexPoint p = flow_closed_form(obj, p0, rep.horizons[i]);
    tab.t.push_back(rep.horizons[i]);
    tab.objective.push_back(objective_value(obj, p));
    tab.residual_l1.push_back(rep.errors[i]);
    tab.p.push_back(p.coords());
  }
  const bool converged = rep.status == LpStatus::Converged;
  out.pass = converged && (!rep.strictly_decreasing || rep.rate_relative_error <= 0.05);
  out.report["status"] = to_string(rep.status);
  out.report["strictly_decreasing"] = rep.strictly_decreasing;
  out.report["horizon"] = rep.horizon;
  out.report["l1_error"] = rep.l1_error;
  out.report["objective"] = rep.objective;
  out.report["measured_rate"] = number(rep.measured_rate);
  out.report["expected_rate"] = rep.expected_rate;
  out.report["rate_relative_error"] = number(rep.rate_relative_error);
  Json limit = Json::array();
  for (Index i = 0; i < n; ++i) limit.push_back(sol.point[i]);
  out.report["limit"] = std::move(limit);
  out.report["pass"] = out.pass;
  out.summary = summary_line(config, n,
                             "status=" + to_string(rep.status) + " " + kv("l1_error", rep.l1_error) +
                                 " " + kv("measured_rate", rep.measured_rate) + " " +
                                 kv("expected_rate", rep.expected_rate),
                             out.pass);
  out.table = std::move(tab);
  return out;
}

Outcome checks_outcome(const RunConfig& config, Index n, const std::vector<CheckResult>& checks) {
  Outcome out;
  Json list = Json::array();
  int passed = 0;
  for (const CheckResult& c : checks) {
    list.push_back(check_json(c));
    if (c.pass) ++passed;
  }
  out.pass = passed == static_cast<int>(checks.size());
  out.report["checks"] = std::move(list);
  out.report["passed"] = passed;
  out.report["total"] = checks.size();
  out.report["pass"] = out.pass;
  std::string metrics = "passed=" + std::to_string(passed) + "/" + std::to_string(checks.size());
  for (const CheckResult& c : checks) {
    if (!c.pass) metrics += " failed[" + c.name + "]";
  }
  out.summary = summary_line(config, n, metrics, out.pass);
  return out;
}

Outcome run_isometry(const RunConfig& config, Index n) {
  if (!(config.q > 1.0) || !std::isfinite(config.q)) throw ConfigError("q must exceed 1");
  std::vector<CheckResult> checks;
  if (config.q == 2.0) checks.push_back(check_isometry({n}, 200, config.seed));
  checks.push_back(check_root_identity({n}, {config.q}, 200, config.seed));
  Outcome out = checks_outcome(config, n, checks);
  out.report["q"] = config.q;
  out.report["trials"] = 200;
  return out;
}

Outcome run_bracket(const RunConfig& config, Index n) {
  const Vector c = materialize(
      bind_spec(config.c_spec, "c_spec", n, config, SequenceSpec::geometric(0.5, 0, Normalization::None)));
  const ComplexPoint z = random_complex_point(n, config.seed);
  std::vector<ScalarField> singles;
  for (Index k = 0; k < n; ++k) singles.emplace_back(DiagonalQuadratic{QuadraticHamiltonian::single(c, k).weights});
  const ScalarField full = DiagonalQuadratic{c};

  double analytic = 0.0;
  double numeric = 0.0;
  auto track = [&](const ScalarField& f, const ScalarField& g) {
    analytic = std::max(analytic, std::abs(poisson_bracket(f, g, z.coords())));
    numeric = std::max(numeric,
                       std::abs(poisson_bracket(f, g, z.coords(), DerivativeMode::Numeric)));
  };
  for (Index k = 0; k < n; ++k) {
    for (Index m = k + 1; m < n; ++m) track(singles[k], singles[m]);
    track(full, singles[k]);
  }
  const double canonical = poisson_bracket(CoordinatePart{0, Part::Real},
                                           CoordinatePart{0, Part::Imag}, z.coords());
  Outcome out;
  out.pass = analytic == 0.0 && numeric <= kNumericBracketTol && std::abs(canonical - 1.0) <= 1e-10;
  out.report["brackets_max_abs"] = analytic;
  out.report["numeric_brackets_max_abs"] = numeric;
  out.report["canonical_pair"] = canonical;
  out.report["pass"] = out.pass;
  out.summary = summary_line(config, n,
                             kv("brackets_max_abs", analytic) + " " +
                                 kv("numeric_brackets_max_abs", numeric) + " " +
                                 kv("canonical_pair", canonical),
                             out.pass);
  return out;
}

Outcome run_integrability(const RunConfig& config, Index n) {
  constexpr int kTrials = 8;
  const Vector c = materialize(
      bind_spec(config.c_spec, "c_spec", n, config, SequenceSpec::geometric(0.5, 0, Normalization::None)));
  const IntegrabilityReport rep = integrability_suite(c, kTrials, config.seed);
  Outcome out;
  out.pass = rep.pass;
  out.report = Json::parse(to_json(rep));
  out.summary = summary_line(config, n,
                             kv("brackets_max_abs", rep.brackets_max_abs) + " " +
                                 kv("numeric_brackets_max_abs", rep.numeric_brackets_max_abs) +
                                 " " + kv("conservation_max_drift", rep.conservation_max_drift) +
                                 " " + kv("gram_det", rep.gram_det),
                             out.pass);
  return out;
}

Outcome dispatch(const RunConfig& config, Index n) {
  switch (config.command) {
    case Command::Flow: return run_flow(config, n);
    case Command::Geodesic: return run_geodesic(config, n);
    case Command::Lp: return run_lp(config, n);
    case Command::Isometry: return run_isometry(config, n);
    case Command::Bracket: return run_bracket(config, n);
    case Command::Integrability: return run_integrability(config, n);
    case Command::CheckAll: return checks_outcome(config, n, run_all_checks(n, config.seed));
  }
  throw ConfigError("unknown command");
}

// JSON config helpers.
template <class T>
T config_value(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("config field '" + key + "' has the wrong type");
  }
}

std::optional<SequenceSpec> config_spec(const Json& j, const std::string& key, SpecRole role) {
  try {
    if (j.is_string()) return parse_sequence_spec(j.get<std::string>(), role);
    if (j.is_object()) {
      // The run's dimension comes from the top-level "dim"; a spec object may
      // omit its own, and any value it carries is ignored unless explicit.
      Json copy = j;
      if (!copy.contains("dim") && copy.value("kind", "") != "explicit") copy["dim"] = 2;
      SequenceSpec spec = sequence_spec_from_json(copy.dump());
      spec.normalization = role_normalization(role);
      if (spec.kind != SequenceKind::Explicit) spec.dim = 0;
      return spec;
    }
  } catch (const Error& e) {
    throw ConfigError("config field '" + key + "': " + e.what());
  }
  throw ConfigError("config field '" + key + "' must be a spec string or object");
}

}  // namespace

// ---------------------------------------------------------------------------

SequenceSpec parse_sequence_spec(std::string_view text, SpecRole role) {
  const Normalization norm = role_normalization(role);
  if (text == "uniform") return SequenceSpec::uniform(0, norm);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    parse_fail(0, "expected uniform, geometric:<r>, explicit:<v,...> or file:<path>, got '" +
                      std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  const std::size_t offset = colon + 1;
  if (kind == "geometric") return geometric_spec(parse_number(rest, offset), norm);
  if (kind == "explicit") return SequenceSpec::explicit_coords(parse_comma_list(rest, offset), norm);
  if (kind == "file") {
    if (rest.empty()) parse_fail(offset, "empty file path");
    return spec_from_file(std::string(rest), offset, role);
  }
  parse_fail(0, "unknown sequence kind '" + std::string(kind) + "'");
}

std::optional<Command> parse_command(std::string_view name) {
  if (name == "flow") return Command::Flow;
  if (name == "geodesic") return Command::Geodesic;
  if (name == "lp") return Command::Lp;
  if (name == "isometry") return Command::Isometry;
  if (name == "bracket") return Command::Bracket;
  if (name == "integrability") return Command::Integrability;
  if (name == "check-all") return Command::CheckAll;
  return std::nullopt;
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Flow: return "flow";
    case Command::Geodesic: return "geodesic";
    case Command::Lp: return "lp";
    case Command::Isometry: return "isometry";
    case Command::Bracket: return "bracket";
    case Command::Integrability: return "integrability";
    case Command::CheckAll: return "check-all";
  }
  return "unknown";
}

void apply_config_json(RunConfig& config, const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      const auto cmd = parse_command(config_value<std::string>(value, key));
      if (!cmd) throw ConfigError("config field 'command' names an unknown command");
      config.command = *cmd;
    } else if (key == "dim") {
      config.dim = config_value<Index>(value, key);
    } else if (key == "c_spec") {
      config.c_spec = config_spec(value, key, SpecRole::Objective);
    } else if (key == "p0_spec") {
      config.p0_spec = config_spec(value, key, SpecRole::Point);
    } else if (key == "v0_spec") {
      config.v0_spec = config_spec(value, key, SpecRole::Velocity);
    } else if (key == "q") {
      config.q = config_value<double>(value, key);
    } else if (key == "t_max") {
      config.t_max = config_value<double>(value, key);
    } else if (key == "dt") {
      config.dt = config_value<double>(value, key);
    } else if (key == "tol") {
      config.tol = config_value<double>(value, key);
    } else if (key == "method") {
      const auto m = config_value<std::string>(value, key);
      if (m != "closed" && m != "rk4") throw ConfigError("config field 'method' must be closed|rk4");
      config.method = m == "closed" ? Method::Closed : Method::Rk4;
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("config field 'seed' must be a nonnegative integer");
      config.seed = value.get<std::uint64_t>();
    } else if (key == "out_path") {
      config.out_path = config_value<std::string>(value, key);
    } else if (key == "format") {
      const auto f = config_value<std::string>(value, key);
      if (f != "csv" && f != "json") throw ConfigError("config field 'format' must be csv|json");
      config.format = f == "csv" ? Format::Csv : Format::Json;
    } else if (key == "timestamp") {
      config.timestamp = config_value<bool>(value, key);
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_atomically(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp =
      dir / ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open temporary file " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " +
                             ec.message());
  }
}

RunResult run(const RunConfig& config) {
  RunResult result;
  const std::string name = to_string(config.command);
  try {
    const Index n = require_dim(config);
    const Outcome out = dispatch(config, n);
    std::string doc =
        config.format == Format::Csv ? render_csv(out, n) : render_json(out, config, n);
    if (config.out_path.empty()) {
      result.output = std::move(doc);
    } else {
      write_atomically(config.out_path, doc);
    }
    result.exit_code = out.pass ? 0 : 1;
    result.summary = out.summary;
  } catch (const ConfigError& e) {
    result.exit_code = 2;
    result.summary = name + " config error: " + e.what();
  } catch (const Error& e) {
    result.exit_code = 1;
    result.summary = name + " error: " + e.what();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.summary = name + " error: " + e.what();
  }
  return result;
}

}  // namespace simplexgeo::tools
