// sigmapi: command-line front end.
//
//   sigmapi analyze    FILE.spode
//   sigmapi quadratize FILE.spode --mode canonical|inclusive|inverse
//   sigmapi series     FILE --order K --t0 T --x0 v1,v2,...
//   sigmapi solve      FILE --to T [--theta q] [--order K]
//   sigmapi check      FILE --window a,b --step h
//
// FILE is either a frame (.frame) or a sigma-pi ODE (.spode). ODEs go through
// the inclusive quadratization, and results are reported for the original
// variables.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "sigmapi/errors.hpp"
#include "sigmapi/oracle.hpp"
#include "sigmapi/parse.hpp"
#include "sigmapi/quadratizer.hpp"
#include "sigmapi/series.hpp"
#include "sigmapi/structure.hpp"

using json = nlohmann::ordered_json;
using namespace sigmapi;

namespace {

constexpr const char* kVersion = "0.1.0";

enum class Format { Json, Csv, Text };

struct RunConfig {
  std::string command;
  std::string input;
  std::string mode = "canonical";
  int order = 16;
  double t0 = 0.0;
  std::vector<double> x0;
  std::optional<double> target;
  double theta = 0.5;
  double step = 1e-3;
  std::vector<double> window;
  Format format = Format::Json;
  std::string output;
};

// ---------------------------------------------------------------------------
// input

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_frame_file(const std::string& path) { return std::filesystem::path(path).extension() == ".frame"; }

/// The problem as the series engine sees it: a frame plus the map from
/// original variables to frame coordinates (identity for .frame inputs).
struct Problem {
  QuadraticFrame frame;
  std::optional<SigmaPiOde> ode;
  std::optional<Quadratization> quad;
  std::vector<std::size_t> observed;  // frame coordinate of each reported variable

  std::vector<double> lift(const std::vector<double>& x) const {
    if (!quad) return x;
    return phi_eval(*quad, x);
  }
};

Problem load_problem(const RunConfig& cfg) {
  const std::string text = slurp(cfg.input);
  Problem p;
  if (is_frame_file(cfg.input)) {
    p.frame = parse_frame(text);
    for (std::size_t i = 0; i < p.frame.dim(); ++i) p.observed.push_back(i);
  } else {
    p.ode = parse_ode(text);
    p.quad = quadratize_inclusive(*p.ode);
    p.frame = driver_frame(*p.quad);
    for (const auto& id : p.quad->identity) p.observed.push_back(*id);
  }
  return p;
}

std::vector<double> require_x0(const RunConfig& cfg, std::size_t n) {
  if (cfg.x0.size() != n)
    throw Error(ErrorCode::InvalidArgument,
                "--x0 needs " + std::to_string(n) + " values, got " + std::to_string(cfg.x0.size()));
  return cfg.x0;
}

// ---------------------------------------------------------------------------
// output helpers

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json meta(const RunConfig& cfg) {
  json config = {{"order", cfg.order}, {"t0", cfg.t0}, {"x0", cfg.x0}};
  if (cfg.command == "quadratize") config = {{"mode", cfg.mode}};
  if (cfg.command == "analyze") config = json::object();
  if (cfg.command == "solve") {
    config["to"] = *cfg.target;
    config["theta"] = cfg.theta;
  }
  if (cfg.command == "check") {
    config["window"] = cfg.window;
    config["step"] = cfg.step;
  }
  return {{"tool", "sigmapi"},   {"version", kVersion},        {"command", cfg.command},
          {"timestamp", timestamp()}, {"input", cfg.input}, {"config", config}};
}

json one_based(const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (auto i : idx) a.push_back(i + 1);
  return a;
}

std::string csv_row(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

// ---------------------------------------------------------------------------
// commands. Each writes the requested format to `out`.

void cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const auto ode = parse_ode(slurp(cfg.input));
  const auto dom = analyze_domain(ode);
  const auto rep = structure(ode);
  const auto chain = decompose_global(ode);

  if (cfg.format == Format::Json) {
    json classes = json::array();
    for (auto c : dom.classes) classes.push_back(to_string(c));
    json stages = json::array();
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const auto& st = chain[k];
      stages.push_back({{"stage", k + 1},
                        {"dimension", st.ode.dim()},
                        {"original_index", one_based(st.original_index)},
                        {"ode", serialize_ode(st.ode)},
                        {"criticality", one_based(st.report.criticality)},
                        {"singularity", one_based(st.report.singularity)},
                        {"dropped", one_based(st.dropped)}});
    }
    json doc = {{"meta", meta(cfg)},
                {"dimension", ode.dim()},
                {"domain",
                 {{"classes", classes},
                  {"macro_orthant", one_based(dom.macro_orthant)},
                  {"removed_hyperplanes", one_based(dom.removed_hyperplanes)}}},
                {"criticality", one_based(rep.criticality)},
                {"singularity", one_based(rep.singularity)},
                {"nonsingular_criticality", one_based(rep.nonsingular_criticality)},
                {"regular", rep.singularity.empty()},
                {"decomposition", stages}};
    out << doc.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    out << "index,class,critical,singular\n";
    auto has = [](const std::vector<std::size_t>& v, std::size_t i) {
      return std::find(v.begin(), v.end(), i) != v.end();
    };
    for (std::size_t i = 0; i < ode.dim(); ++i)
      out << i + 1 << "," << to_string(dom.classes[i]) << "," << has(rep.criticality, i) << ","
          << has(rep.singularity, i) << "\n";
  } else {
    out << "dimension: " << ode.dim() << "\n";
    for (std::size_t i = 0; i < ode.dim(); ++i) out << "  x" << i + 1 << ": " << to_string(dom.classes[i]) << "\n";
    out << "criticality: " << one_based(rep.criticality).dump() << "\n";
    out << "singularity: " << one_based(rep.singularity).dump() << "\n";
    for (std::size_t k = 0; k < chain.size(); ++k) {
      out << "stage " << k + 1 << " (variables " << one_based(chain[k].original_index).dump() << "):\n";
      std::istringstream lines(serialize_ode(chain[k].ode));
      for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
    }
  }
}

void cmd_quadratize(const RunConfig& cfg, std::ostream& out) {
  const auto ode = parse_ode(slurp(cfg.input));
  Quadratization q;
  if (cfg.mode == "canonical")
    q = quadratize_canonical(ode);
  else if (cfg.mode == "inclusive")
    q = quadratize_inclusive(ode);
  else if (cfg.mode == "inverse")
    q = inverse_driver(ode);
  else
    throw Error(ErrorCode::InvalidArgument, "unknown mode " + cfg.mode);

  const bool inverse = q.kind == QuadratizationKind::Inverse;
  const std::string sym = inverse ? "W" : "Z";
  std::vector<std::string> phi;
  for (const auto& m : q.phi) phi.push_back(inverse ? format_monomial(m.inverse()) : format_monomial(m));

  if (cfg.format == Format::Json) {
    json coords = json::array();
    for (std::size_t s = 0; s < q.driver_dim(); ++s) {
      json pi = json::array();
      for (const auto& p : q.pi[s]) pi.push_back(format_exponent(p));
      coords.push_back({{"index", s + 1},
                        {"equation", q.coords[s].equation + 1},
                        {"term", q.coords[s].term + 1},
                        {"monomial", phi[s]},
                        {"pi", pi}});
    }
    json identity = json::array();
    for (const auto& id : q.identity) identity.push_back(id ? json(*id + 1) : json(nullptr));
    json doc = {{"meta", meta(cfg)},
                {"mode", to_string(q.kind)},
                {"source", serialize_ode(q.source)},
                {"dimension", q.driver_dim()},
                {"coordinates", coords},
                {"identity", identity}};
    if (inverse)
      doc["inverse_ode"] = serialize_ode(inverse_driver_ode(q));
    else
      doc["frame"] = serialize_frame(driver_frame(q));
    out << doc.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    out << "index,equation,term,monomial\n";
    for (std::size_t s = 0; s < q.driver_dim(); ++s)
      out << s + 1 << "," << q.coords[s].equation + 1 << "," << q.coords[s].term + 1 << "," << phi[s] << "\n";
  } else {
    // comment lines plus the body: the output is itself a valid input file
    for (std::size_t s = 0; s < q.driver_dim(); ++s)
      out << "# " << sym << s + 1 << " = " << phi[s] << "\n";
    out << (inverse ? serialize_ode(inverse_driver_ode(q)) : serialize_frame(driver_frame(q))) << "\n";
  }
}

SeriesSolution series_at(const Problem& p, const std::vector<double>& z0, double t0, int order) {
  const auto plan = p.frame.is_stationary() ? plan_stationary(p.frame, order, p.observed)
                                            : plan_general(p.frame, order, p.observed);
  return assemble(plan, z0, t0);
}

void cmd_series(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_problem(cfg);
  const auto x0 = require_x0(cfg, p.observed.size());
  const auto sol = series_at(p, p.lift(x0), cfg.t0, cfg.order);
  const std::size_t n = p.observed.size();

  if (cfg.format == Format::Json) {
    json rows = json::array();
    for (int k = 0; k <= sol.order; ++k) {
      std::vector<double> norm(n);
      for (std::size_t r = 0; r < n; ++r) norm[r] = sol.normalized(k, r);
      rows.push_back({{"k", k}, {"c", sol.coeffs[k]}, {"normalized", norm}});
    }
    json radius = std::isinf(sol.radius_bound) ? json(nullptr) : json(sol.radius_bound);
    json doc = {{"meta", meta(cfg)},
                {"components", n},
                {"radius_bound", radius},
                {"frame_fingerprint", std::to_string(sol.frame_ref)},
                {"coefficients", rows}};
    out << doc.dump(2) << "\n";
  } else {
    const bool csv = cfg.format == Format::Csv;
    if (!csv) out << "# radius bound " << format_real(sol.radius_bound) << "\n";
    out << (csv ? "k" : "# k");
    for (std::size_t r = 0; r < n; ++r) out << ",c_" << r + 1;
    for (std::size_t r = 0; r < n; ++r) out << ",n_" << r + 1;
    out << "\n";
    for (int k = 0; k <= sol.order; ++k) {
      std::vector<double> norm(n);
      for (std::size_t r = 0; r < n; ++r) norm[r] = sol.normalized(k, r);
      out << k << "," << csv_row(sol.coeffs[k]) << "," << csv_row(norm) << "\n";
    }
  }
}

void cmd_solve(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.target) throw Error(ErrorCode::InvalidArgument, "solve needs --to");
  const auto p = load_problem(cfg);
  const auto x0 = require_x0(cfg, p.observed.size());
  ContinuationPolicy policy;
  policy.step_fraction = cfg.theta;
  const auto c = continue_to(p.frame, p.lift(x0), cfg.t0, *cfg.target, cfg.order, policy);
  std::vector<double> value;
  for (auto s : p.observed) value.push_back(c.values[s]);

  if (cfg.format == Format::Json) {
    json doc = {{"meta", meta(cfg)}, {"t", *cfg.target}, {"value", value}, {"steps", c.path.size()}, {"path", c.path}};
    out << doc.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    out << "t";
    for (std::size_t r = 0; r < value.size(); ++r) out << ",x" << r + 1;
    out << "\n" << format_real(*cfg.target) << "," << csv_row(value) << "\n";
  } else {
    out << "x(" << format_real(*cfg.target) << ") = " << csv_row(value) << "  (" << c.path.size()
        << " re-expansions)\n";
  }
}

void cmd_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.window.size() != 2 || !(cfg.window[0] <= cfg.window[1]))
    throw Error(ErrorCode::InvalidArgument, "--window needs a,b with a <= b");
  const auto p = load_problem(cfg);
  const auto x0 = require_x0(cfg, p.observed.size());
  const auto sol = series_at(p, p.lift(x0), cfg.t0, cfg.order);
  // the oracle integrates the input itself, not the quadratized system
  const auto traj = p.ode ? oracle::rk4_window(*p.ode, x0, cfg.t0, cfg.window[0], cfg.window[1], cfg.step)
                          : oracle::rk4_window(p.frame, x0, cfg.t0, cfg.window[0], cfg.window[1], cfg.step);
  auto series_fn = [&sol](double t) { return evaluate(sol, t).values; };
  const auto rep = oracle::compare(series_fn, traj, {cfg.window[0], cfg.window[1]}, cfg.t0, sol.radius_bound);
  const bool warning = rep.out_of_radius > 0;

  if (cfg.format == Format::Json) {
    json radius = std::isinf(sol.radius_bound) ? json(nullptr) : json(sol.radius_bound);
    json doc = {{"meta", meta(cfg)},
                {"samples", rep.samples},
                {"max_rel_error", rep.max_rel_error},
                {"rms_rel_error", rep.rms_rel_error},
                {"worst_time", rep.worst_time},
                {"radius_bound", radius},
                {"out_of_radius", rep.out_of_radius},
                {"warning", warning}};
    out << doc.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    const std::size_t n = p.observed.size();
    out << "t";
    for (std::size_t r = 0; r < n; ++r) out << ",oracle_x" << r + 1;
    for (std::size_t r = 0; r < n; ++r) out << ",series_x" << r + 1;
    out << "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k)
      out << format_real(traj.times[k]) << "," << csv_row(traj.states[k]) << ","
          << csv_row(series_fn(traj.times[k])) << "\n";
  } else {
    out << "samples " << rep.samples << ", max rel error " << format_real(rep.max_rel_error) << " at t = "
        << format_real(rep.worst_time) << ", rms " << format_real(rep.rms_rel_error) << "\n";
    if (warning) out << "warning: " << rep.out_of_radius << " samples lie outside the guaranteed radius\n";
  }
}

// ---------------------------------------------------------------------------

int exit_code(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const DomainError*>(&e)) return 3;
  if (dynamic_cast<const NumericError*>(&e)) return 4;
  return 1;
}

/// Values from --config fill whatever the command line left unset.
void apply_config(const std::string& path, RunConfig& cfg, const CLI::App& sub) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ParseError(ErrorCode::SyntaxError, path + ": " + e.what(), SourceSpan{});
  }
  auto unset = [&sub](const char* flag) { return sub.get_option_no_throw(flag) == nullptr || sub.count(flag) == 0; };
  if (j.contains("order") && unset("--order")) cfg.order = j["order"].get<int>();
  if (j.contains("t0") && unset("--t0")) cfg.t0 = j["t0"].get<double>();
  if (j.contains("x0") && unset("--x0")) cfg.x0 = j["x0"].get<std::vector<double>>();
  if (j.contains("to") && unset("--to")) cfg.target = j["to"].get<double>();
  if (j.contains("theta") && unset("--theta")) cfg.theta = j["theta"].get<double>();
  if (j.contains("step") && unset("--step")) cfg.step = j["step"].get<double>();
  if (j.contains("window") && unset("--window")) cfg.window = j["window"].get<std::vector<double>>();
  if (j.contains("mode") && unset("--mode")) cfg.mode = j["mode"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor series and quadratization toolkit for sigma-pi ODEs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, format = "json";
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "input file (.spode or .frame)")->required()->check(CLI::ExistingFile);
    sub->add_option("--config", config_path, "JSON file with default option values")->check(CLI::ExistingFile);
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("-o,--output", cfg.output, "write to this file instead of stdout");
  };
  auto numeric = [&](CLI::App* sub) {
    sub->add_option("--order,-K", cfg.order, "series order K")->check(CLI::Range(0, kMaxOrder));
    sub->add_option("--t0", cfg.t0, "expansion time");
    sub->add_option("--x0", cfg.x0, "initial state v1,v2,...")->delimiter(',');
  };

  auto* analyze = app.add_subcommand("analyze", "domain, critical and singular indices, decomposition");
  common(analyze);
  auto* quad = app.add_subcommand("quadratize", "Driver coordinates and frame");
  common(quad);
  quad->add_option("--mode", cfg.mode, "canonical, inclusive or inverse")
      ->check(CLI::IsMember({"canonical", "inclusive", "inverse"}));
  auto* series = app.add_subcommand("series", "Taylor coefficients at t0");
  common(series);
  numeric(series);
  auto* solve = app.add_subcommand("solve", "value at a target time by re-expansion");
  common(solve);
  numeric(solve);
  double target = 0.0;
  solve->add_option("--to", target, "target time");
  solve->add_option("--theta", cfg.theta, "step as a fraction of the radius bound")
      ->check(CLI::Range(0.0, 1.0));
  auto* check = app.add_subcommand("check", "compare the series with the RK4 oracle");
  common(check);
  numeric(check);
  check->add_option("--window", cfg.window, "a,b")->delimiter(',')->expected(2);
  check->add_option("--step", cfg.step, "RK4 step")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (cfg.command == "solve" && sub->count("--to") > 0) cfg.target = target;
  try {
    if (!config_path.empty()) apply_config(config_path, cfg, *sub);
    cfg.format = formats.at(format);
    if (cfg.order < 0 || cfg.order > kMaxOrder) throw Error(ErrorCode::InvalidArgument, "order out of range");
    if (!(cfg.theta > 0.0 && cfg.theta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "theta must lie in (0, 1]");
    if (!(cfg.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");

    std::ostringstream buf;
    if (cfg.command == "analyze") cmd_analyze(cfg, buf);
    else if (cfg.command == "quadratize") cmd_quadratize(cfg, buf);
    else if (cfg.command == "series") cmd_series(cfg, buf);
    else if (cfg.command == "solve") cmd_solve(cfg, buf);
    else cmd_check(cfg, buf);

    if (cfg.output.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.output);
      f << buf.str();
    }
    return 0;
  } catch (const ParseError& e) {
    // the message already starts with line:column
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e);
  }
}
