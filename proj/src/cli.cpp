#include "berglab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "berglab/asymptotics.hpp"
#include "berglab/ball_kernel.hpp"
#include "berglab/error.hpp"
#include "berglab/halfspace_kernel.hpp"
#include "berglab/oracles.hpp"
#include "berglab/quadrature.hpp"
#include "berglab/text.hpp"
#include "berglab/verify.hpp"
#include "berglab/weights.hpp"

namespace berglab {

using json = nlohmann::json;

namespace {

constexpr std::string_view kCommands[] = {"kernel", "moments", "oracle",
                                          "asymptotics", "sweep", "verify"};

// Keys shared by flags (as --key) and config files.
constexpr std::string_view kKeys[] = {"geometry", "weight", "kind", "theorem", "suite",
                                      "source",   "alpha",  "alphas", "n",     "m",
                                      "t",        "y",      "kmax", "tol",     "out"};

[[noreturn]] void parse_error(std::string_view key, const std::string& what) {
  throw Error(ErrorCode::kParseError, "key '" + std::string(key) + "': " + what);
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kValidationError, what);
}

double as_double(std::string_view key, const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto d = text::parse_double(v.get<std::string>())) return *d;
  }
  parse_error(key, "expected a number, got " + v.dump());
}

int as_int(std::string_view key, const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  if (v.is_string()) {
    if (auto i = text::parse_int(v.get<std::string>())) return *i;
  }
  parse_error(key, "expected an integer, got " + v.dump());
}

std::string as_string(std::string_view key, const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  parse_error(key, "expected a string, got " + v.dump());
}

std::vector<double> as_list(std::string_view key, const json& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const json& x : v) out.push_back(as_double(key, x));
  } else if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_string()) {
    const std::string joined = v.get<std::string>();
    for (std::string_view part : text::split(joined, ',')) {
      const auto d = text::parse_double(part);
      if (!d) parse_error(key, "bad list entry '" + std::string(part) + "'");
      out.push_back(*d);
    }
  } else {
    parse_error(key, "expected a list of numbers, got " + v.dump());
  }
  return out;
}

template <std::size_t N>
bool one_of(std::string_view value, const std::string_view (&options)[N]) {
  for (std::string_view o : options) {
    if (o == value) return true;
  }
  return false;
}

constexpr std::string_view kGeometries[] = {"ball",       "fock",      "disc",     "complex_ball",
                                            "real_ball",  "halfspace", "halfplane", "siegel"};
constexpr std::string_view kKinds[] = {"holomorphic", "harmonic"};
constexpr std::string_view kTheorems[] = {"1", "2", "3", "origin", "holo"};
constexpr std::string_view kSources[] = {"series", "oracle"};

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0)) invalid("tol must be > 0");
  for (std::size_t i = 1; i < c.alphas.size(); ++i) {
    if (!(c.alphas[i] > c.alphas[i - 1])) invalid("alphas must be strictly increasing");
  }
  for (double a : c.alphas) {
    if (!(a >= 0.0)) invalid("alphas must be ≥ 0");
  }
  if (c.alpha && !(*c.alpha >= 0.0)) invalid("alpha must be ≥ 0");
  if (c.n && *c.n < 2) invalid("n must be ≥ 2");
  if (c.m && *c.m < 1) invalid("m must be ≥ 1");
  if (c.kmax && *c.kmax < 0) invalid("kmax must be ≥ 0");
  if (!c.geometry.empty() && !one_of(c.geometry, kGeometries)) {
    invalid("unknown geometry '" + c.geometry + "'");
  }
  if (!c.kind.empty() && !one_of(c.kind, kKinds)) invalid("unknown kind '" + c.kind + "'");
  if (!c.theorem.empty() && !one_of(c.theorem, kTheorems)) {
    invalid("unknown theorem '" + c.theorem + "'");
  }
  if (!c.source.empty() && !one_of(c.source, kSources)) {
    invalid("unknown source '" + c.source + "'");
  }
  if (!c.suite.empty() && !is_suite_name(c.suite)) invalid("unknown suite '" + c.suite + "'");
  if (!c.weight.empty()) {
    if (is_vertical_weight_spec(c.weight)) {
      parse_vertical_weight(c.weight);
    } else {
      parse_radial_weight(c.weight);
    }
  }
}

Command command_from(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kCommands); ++i) {
    if (kCommands[i] == s) return static_cast<Command>(i);
  }
  parse_error("command", "unknown command '" + std::string(s) + "'");
}

RunConfig from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "config must be a JSON object");
  RunConfig c;
  bool have_command = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      c.command = command_from(as_string(key, value));
      have_command = true;
    } else if (key == "geometry") {
      c.geometry = as_string(key, value);
    } else if (key == "weight") {
      c.weight = as_string(key, value);
    } else if (key == "kind") {
      c.kind = as_string(key, value);
    } else if (key == "theorem") {
      c.theorem = as_string(key, value);
    } else if (key == "suite") {
      c.suite = as_string(key, value);
    } else if (key == "source") {
      c.source = as_string(key, value);
    } else if (key == "out") {
      c.out = as_string(key, value);
    } else if (key == "alpha") {
      c.alpha = as_double(key, value);
    } else if (key == "alphas") {
      c.alphas = as_list(key, value);
    } else if (key == "n") {
      c.n = as_int(key, value);
    } else if (key == "m") {
      c.m = as_int(key, value);
    } else if (key == "t") {
      c.t = as_double(key, value);
    } else if (key == "y") {
      c.y = as_double(key, value);
    } else if (key == "kmax") {
      c.kmax = as_int(key, value);
    } else if (key == "tol") {
      c.tol = as_double(key, value);
    } else {
      parse_error(key, "unknown key");
    }
  }
  if (!have_command) invalid("no command given");
  validate(c);
  return c;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("config is not valid JSON: ") + e.what());
  }
}

struct FlagValues {
  std::string command;
  std::string config;
  std::map<std::string, std::string> values;
};

void build_app(CLI::App& app, FlagValues& flags) {
  app.add_option("command", flags.command,
                 "kernel | moments | oracle | asymptotics | sweep | verify");
  app.add_option("--config", flags.config, "JSON file with the same keys as the flags");
  const std::map<std::string, std::string> help = {
      {"geometry", "ball, fock, disc, complex_ball, real_ball, halfspace, halfplane, siegel"},
      {"weight", "weight spec, e.g. power:1, poly:1,0,-1, exp:1, vert-power:1"},
      {"kind", "holomorphic or harmonic"},
      {"theorem", "1, 2, 3, origin or holo (asymptotics)"},
      {"suite", "verification suite (verify)"},
      {"source", "series or oracle (asymptotics, sweep)"},
      {"alpha", "weight exponent"},
      {"alphas", "comma-separated, strictly increasing exponents"},
      {"n", "real dimension"},
      {"m", "complex dimension"},
      {"t", "squared radius |x|^2"},
      {"y", "height above the boundary"},
      {"kmax", "largest moment index (moments)"},
      {"tol", "relative tolerance"},
      {"out", "write CSV here instead of stdout"}};
  for (std::string_view key : kKeys) {
    const std::string k(key);
    app.add_option("--" + k, flags.values[k], help.at(k));
  }
}

json overlay(const FlagValues& flags, const CLI::App& app) {
  json doc = json::object();
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    if (!in) throw Error(ErrorCode::kParseError, "cannot read config file " + flags.config);
    std::stringstream buffer;
    buffer << in.rdbuf();
    doc = parse_json(buffer.str());
    if (!doc.is_object()) throw Error(ErrorCode::kParseError, "config must be a JSON object");
  }
  if (!flags.command.empty()) doc["command"] = flags.command;
  for (std::string_view key : kKeys) {
    const std::string k(key);
    if (app.get_option("--" + k)->count() > 0) doc[k] = flags.values.at(k);
  }
  return doc;
}

// ---------------------------------------------------------------------------

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) invalid(std::string("missing --") + flag);
  return *v;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const std::string& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  return row + '\n';
}

std::string fmt(double v) { return text::sci15(v); }

bool vertical_geometry(std::string_view g) {
  return g == "halfspace" || g == "halfplane" || g == "siegel";
}

std::string default_weight(const RunConfig& c) {
  if (!c.weight.empty()) return c.weight;
  if (c.geometry == "fock") return "exp:1";
  if (vertical_geometry(c.geometry) || c.theorem == "3") return "vert-power:1";
  return "power:1";
}

std::string run_kernel(const RunConfig& c) {
  const std::string geometry = c.geometry.empty() ? "ball" : c.geometry;
  const double alpha = need(c.alpha, "alpha");
  const std::string weight = default_weight(c);
  std::string kind = c.kind;
  KernelEvaluation k;
  if (geometry == "ball" || geometry == "fock" || geometry == "real_ball" || geometry == "disc" ||
      geometry == "complex_ball") {
    const RadialWeightProfile profile = parse_radial_weight(weight);
    SeriesOptions options;
    options.tol = std::max(c.tol, 1e-15);
    if (kind.empty()) kind = (geometry == "disc" || geometry == "complex_ball") ? "holomorphic"
                                                                                 : "harmonic";
    const double t = need(c.t, "t");
    if (kind == "harmonic") {
      k = harmonic_ball_diag(profile, alpha, need(c.n, "n"), t, options);
    } else {
      const int m = geometry == "disc" ? 1 : need(c.m, "m");
      k = holomorphic_ball_diag(profile, alpha, m, t, options);
    }
  } else {
    const VerticalWeightProfile profile = parse_vertical_weight(weight);
    HalfspaceOptions options;
    options.tol = std::max(c.tol, 1e-13);
    if (kind.empty()) kind = geometry == "halfspace" ? "harmonic" : "holomorphic";
    const double y = need(c.y, "y");
    if (kind == "harmonic") {
      k = harmonic_halfspace_diag(profile, alpha, need(c.n, "n"), y, options);
    } else {
      const int m = geometry == "halfplane" ? 1 : need(c.m, "m");
      k = siegel_holo_diag(profile, alpha, {y, m}, options);
    }
  }
  return csv_row({"geometry", "kind", "alpha", "dimension", "coordinate", "value", "terms_used",
                  "tail_bound", "log_value"}) +
         csv_row({geometry, kind, fmt(k.alpha), std::to_string(k.dimension), fmt(k.coordinate),
                  fmt(k.value), std::to_string(k.terms_used), fmt(k.tail_bound),
                  fmt(k.log_value)});
}

std::string run_moments(const RunConfig& c) {
  const RadialWeightProfile profile = parse_radial_weight(default_weight(c));
  QuadratureSpec spec;
  spec.rel_tol = std::max(c.tol, 1e-15);
  const MomentTable table = moment_table(profile, need(c.alpha, "alpha"), c.kmax.value_or(10), spec);
  std::string out = csv_row({"k", "rho_k", "err"});
  for (int k = 0; k <= table.k_max(); ++k) {
    out += csv_row({std::to_string(k), fmt(table.values[k]), fmt(table.error_estimates[k])});
  }
  return out;
}

std::string run_oracle(const RunConfig& c) {
  const std::string g = c.geometry.empty() ? "ball" : c.geometry;
  OracleSelector sel;
  sel.alpha = need(c.alpha, "alpha");
  double value = 0.0;
  if (g == "disc" || g == "halfplane" || g == "complex_ball") {
    sel.kind = KernelKind::kHolomorphic;
    sel.geometry = g == "disc"        ? OracleGeometry::kDisc
                   : g == "halfplane" ? OracleGeometry::kHalfPlane
                                      : OracleGeometry::kComplexBall;
    sel.dimension = g == "complex_ball" ? need(c.m, "m") : 1;
    sel.coordinate = g == "halfplane" ? need(c.y, "y") : need(c.t, "t");
    value = oracle_holo_diag(sel);
  } else if (g == "ball" || g == "real_ball" || g == "halfspace" || g == "fock") {
    sel.kind = KernelKind::kHarmonic;
    sel.geometry = g == "halfspace" ? OracleGeometry::kHalfSpace
                   : g == "fock"    ? OracleGeometry::kFock
                                    : OracleGeometry::kRealBall;
    sel.dimension = need(c.n, "n");
    sel.coordinate = g == "halfspace" ? need(c.y, "y") : need(c.t, "t");
    value = oracle_harm_diag(sel);
  } else {
    throw Error(ErrorCode::kUnsupportedSelector, "no closed form for geometry " + g);
  }
  return csv_row({"geometry", "alpha", "dimension", "coordinate", "value"}) +
         csv_row({g, fmt(sel.alpha), std::to_string(sel.dimension), fmt(sel.coordinate),
                  fmt(value)});
}

WeightProfile profile_for(const std::string& spec) {
  if (is_vertical_weight_spec(spec)) return parse_vertical_weight(spec);
  return parse_radial_weight(spec);
}

AsymptoticRequest request_for(const RunConfig& c, Theorem theorem) {
  AsymptoticRequest r;
  r.theorem = theorem;
  r.weight = profile_for(default_weight(c));
  const bool vertical = std::holds_alternative<VerticalWeightProfile>(r.weight);
  if (theorem == Theorem::kHolomorphic) {
    r.dimension = (c.geometry == "disc" || c.geometry == "halfplane") ? 1 : need(c.m, "m");
  } else {
    r.dimension = need(c.n, "n");
  }
  if (theorem == Theorem::kOrigin) {
    r.coordinate = 0.0;
  } else {
    r.coordinate = vertical ? need(c.y, "y") : need(c.t, "t");
  }
  if (c.alphas.empty()) invalid("missing --alphas");
  r.alphas = c.alphas;
  r.source = c.source == "oracle" ? KernelSource::kOracle : KernelSource::kSeries;
  r.tol = c.tol;
  return r;
}

std::string run_asymptotics(const RunConfig& c) {
  if (c.theorem.empty()) invalid("missing --theorem");
  const Theorem theorem = c.theorem == "1"        ? Theorem::kRootGap
                          : c.theorem == "2"      ? Theorem::kBall
                          : c.theorem == "3"      ? Theorem::kHalfSpace
                          : c.theorem == "origin" ? Theorem::kOrigin
                                                  : Theorem::kHolomorphic;
  const AsymptoticReport rep = asymptotic_report(request_for(c, theorem));
  std::string out = csv_row({"alpha", "scaled_value", "prediction", "ratio"});
  for (std::size_t i = 0; i < rep.alpha_grid.size(); ++i) {
    out += csv_row({fmt(rep.alpha_grid[i]), fmt(rep.scaled_values[i]), fmt(rep.prediction),
                    fmt(rep.ratios[i])});
  }
  return out;
}

std::string run_sweep(const RunConfig& c) {
  const std::string g = c.geometry.empty() ? "ball" : c.geometry;
  Theorem theorem = Theorem::kBall;
  if (g == "halfspace") {
    theorem = Theorem::kHalfSpace;
  } else if (g == "disc" || g == "complex_ball" || g == "siegel" || g == "halfplane" ||
             c.kind == "holomorphic") {
    theorem = Theorem::kHolomorphic;
  } else if (need(c.t, "t") == 0.0) {
    theorem = Theorem::kOrigin;
  }
  RunConfig adjusted = c;
  adjusted.geometry = g;
  const AsymptoticReport rep = asymptotic_report(request_for(adjusted, theorem));
  std::string out = csv_row({"alpha", "value", "scaled", "prediction", "ratio"});
  for (std::size_t i = 0; i < rep.alpha_grid.size(); ++i) {
    out += csv_row({fmt(rep.alpha_grid[i]), fmt(std::exp(rep.log_kernel_values[i])),
                    fmt(rep.scaled_values[i]), fmt(rep.prediction), fmt(rep.ratios[i])});
  }
  return out;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
  return kCommands[static_cast<std::size_t>(command)];
}

RunConfig parse_config_text(std::string_view text) { return from_json(parse_json(text)); }

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"berglab", "berglab"};
  FlagValues flags;
  build_app(app, flags);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return from_json(overlay(flags, app));
}

std::string render_config(const RunConfig& c) {
  json doc = json::object();
  doc["command"] = std::string(to_string(c.command));
  const auto put = [&doc](const char* key, const std::string& v) {
    if (!v.empty()) doc[key] = v;
  };
  put("geometry", c.geometry);
  put("weight", c.weight);
  put("kind", c.kind);
  put("theorem", c.theorem);
  put("suite", c.suite);
  put("source", c.source);
  put("out", c.out);
  if (c.alpha) doc["alpha"] = *c.alpha;
  if (!c.alphas.empty()) doc["alphas"] = c.alphas;
  if (c.n) doc["n"] = *c.n;
  if (c.m) doc["m"] = *c.m;
  if (c.t) doc["t"] = *c.t;
  if (c.y) doc["y"] = *c.y;
  if (c.kmax) doc["kmax"] = *c.kmax;
  doc["tol"] = c.tol;
  return doc.dump();
}

int run(const RunConfig& config, std::ostream& out) {
  std::string report;
  int status = kExitOk;
  switch (config.command) {
    case Command::kKernel: report = run_kernel(config); break;
    case Command::kMoments: report = run_moments(config); break;
    case Command::kOracle: report = run_oracle(config); break;
    case Command::kAsymptotics: report = run_asymptotics(config); break;
    case Command::kSweep: report = run_sweep(config); break;
    case Command::kVerify: {
      report = csv_row({"status", "check", "got", "want", "tol"});
      for (const CheckResult& r : run_suite(config.suite.empty() ? "all" : config.suite)) {
        report += format_check(r) + '\n';
        if (!r.pass) status = kExitVerifyFailed;
      }
      break;
    }
  }
  if (config.out.empty()) {
    out << report;
  } else {
    std::ofstream file(config.out);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + config.out);
    file << report;
  }
  return status;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  for (const std::string& a : args) {
    if (a == "--help" || a == "-h") {
      CLI::App app{"berglab: weighted Bergman kernel diagonals and their large-α limits", "berglab"};
      FlagValues flags;
      build_app(app, flags);
      out << app.help();
      return kExitOk;
    }
  }
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    return run(config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical_failure(e.code()) ? kExitNoConvergence : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace berglab
