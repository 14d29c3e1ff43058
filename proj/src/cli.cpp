#include "camforge/cli.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "camforge/csv.hpp"
#include "camforge/dynamics.hpp"
#include "camforge/error.hpp"
#include "camforge/gsm_model.hpp"
#include "camforge/inverse_design.hpp"
#include "camforge/numfmt.hpp"
#include "camforge/report.hpp"
#include "camforge/svg.hpp"

namespace camforge::cli {

namespace {

namespace fs = std::filesystem;

/// Bad flags, config keys or values. Maps to kUsageError.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::set<std::string>>& config_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"force", {"force", "table", "interp"}},
      {"gsm",
       {"stiffness", "preload", "travel-limit", "k1", "k2", "half-gap", "rod-length", "range", "points",
        "csv", "svg"}},
      {"design",
       {"search-window", "domain-tol", "quad-tol", "samples", "residual-samples", "exact-params", "report",
        "csv-dir", "svg-dir", "timing"}},
      {"simulate",
       {"mass", "x0", "v0", "dt", "t-end", "method", "stride", "lock-guard", "branch", "out", "track-csv",
        "compare-reference"}},
      {"verify", {"threshold"}},
  };
  return keys;
}

/// String-valued flags of one subcommand, merged with an optional config file.
class Options {
 public:
  Options(CLI::App* app, std::vector<std::string> sections) : app_(app), sections_(std::move(sections)) {
    app_->add_option("--config", config_path_, "INI config file; flags override its keys");
  }

  void add(const std::string& name, const std::string& help) {
    options_[name] = app_->add_option("--" + name, values_[name], help);
  }
  void add_flag(const std::string& name, const std::string& help) {
    options_[name] = app_->add_flag("--" + name, flags_[name], help);
  }

  /// Fills flags that were not given on the command line from the config file.
  void merge_config() {
    if (config_path_.empty()) return;
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::ini_parser::read_ini(config_path_, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw UsageError("cannot read config " + config_path_ + ": " + e.message());
    }
    for (const auto& [section, body] : tree) {
      const auto known = config_keys().find(section);
      if (known == config_keys().end() || body.empty()) {
        throw UsageError("config " + config_path_ + ": unknown section [" + section + "]");
      }
      const bool relevant = std::find(sections_.begin(), sections_.end(), section) != sections_.end();
      for (const auto& [key, node] : body) {
        if (!known->second.contains(key)) {
          throw UsageError("config " + config_path_ + ": unknown key '" + key + "' in [" + section + "]");
        }
        const auto opt = options_.find(key);
        if (!relevant || opt == options_.end() || opt->second->count() > 0) continue;
        std::string value = node.data();
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (flags_.contains(key)) {
          if (value == "true" || value == "1" || value == "yes") {
            flags_[key] = true;
          } else if (value == "false" || value == "0" || value == "no") {
            flags_[key] = false;
          } else {
            throw UsageError("config key '" + key + "' must be true or false");
          }
        } else {
          values_[key] = value;
          from_config_.insert(key);
        }
      }
    }
  }

  bool has(const std::string& name) const {
    const auto it = values_.find(name);
    return it != values_.end() && (options_.at(name)->count() > 0 || from_config_.contains(name));
  }
  const std::string& str(const std::string& name) const {
    if (!has(name)) throw UsageError("missing required flag --" + name);
    return values_.at(name);
  }
  std::string str_or(const std::string& name, const std::string& fallback) const {
    return has(name) ? values_.at(name) : fallback;
  }
  double number(const std::string& name) const {
    try {
      return parse_double(str(name));
    } catch (const Error&) {
      throw UsageError("flag --" + name + " expects a number, got '" + values_.at(name) + "'");
    }
  }
  double number_or(const std::string& name, double fallback) const { return has(name) ? number(name) : fallback; }
  std::optional<double> maybe_number(const std::string& name) const {
    if (!has(name)) return std::nullopt;
    return number(name);
  }
  std::size_t count_or(const std::string& name, std::size_t fallback) const {
    if (!has(name)) return fallback;
    const double v = number(name);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e7) {
      throw UsageError("flag --" + name + " expects a positive integer");
    }
    return static_cast<std::size_t>(v);
  }
  bool flag(const std::string& name) const { return flags_.at(name); }

 private:
  CLI::App* app_;
  std::vector<std::string> sections_;
  std::string config_path_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> flags_;
  std::map<std::string, CLI::Option*> options_;
  std::set<std::string> from_config_;
};

// --- shared option groups ----------------------------------------------------

void add_force_options(Options& o) {
  o.add("force", "target restoring force F(X) as an expression, e.g. \"5000*X^3\"");
  o.add("table", "two-column CSV (X,F) force table instead of --force");
  o.add("interp", "force table interpolation: cubic (default) or linear");
}

void add_design_options(Options& o) {
  add_force_options(o);
  o.add("stiffness", "spring stiffness K_GSM [N/m]");
  o.add("preload", "spring preload Delta [m]");
  o.add("travel-limit", "travel limit L [m]");
  o.add("search-window", "half-width of the domain search [m] (default 10 L)");
  o.add("domain-tol", "domain boundary tolerance [m] (default 1e-10)");
  o.add("quad-tol", "absolute quadrature tolerance [N m] (default 1e-12)");
  o.add_flag("exact-params", "only the signed K and the given preload class");
}

struct LoadedForce {
  std::shared_ptr<const ForceSpec> spec;
  ForceEcho echo;
};

LoadedForce load_table(const std::string& path, const std::string& interp) {
  Interpolation mode;
  if (interp == "cubic") {
    mode = Interpolation::Cubic;
  } else if (interp == "linear") {
    mode = Interpolation::Linear;
  } else {
    throw UsageError("flag --interp expects cubic or linear, got '" + interp + "'");
  }
  auto cols = csv::read_two_columns(path);
  LoadedForce out;
  out.spec = std::make_shared<ForceSpec>(ForceSpec::sampled(std::move(cols.first), std::move(cols.second), mode));
  out.echo = {"table", path, {}, interp};
  return out;
}

LoadedForce load_expression(const std::string& text) {
  LoadedForce out;
  out.spec = std::make_shared<ForceSpec>(parse_force(text));
  out.echo.text = text;
  if (out.spec->kind() == ForceSpec::Kind::Polynomial) {
    out.echo.kind = "polynomial";
    out.echo.coefficients.assign(out.spec->coefficients().begin(), out.spec->coefficients().end());
  } else {
    out.echo.kind = "expression";
  }
  return out;
}

LoadedForce load_force(const Options& o) {
  if (o.has("force") && o.has("table")) throw UsageError("give either --force or --table, not both");
  if (o.has("table")) return load_table(o.str("table"), o.str_or("interp", "cubic"));
  if (!o.has("force")) throw UsageError("missing required flag --force (or --table)");
  return load_expression(o.str("force"));
}

LoadedForce load_force(const ForceEcho& echo) {
  if (echo.kind == "table") return load_table(echo.text, echo.interpolation);
  return load_expression(echo.text);
}

unsigned thread_count() {
  const char* env = std::getenv("CAMFORGE_THREADS");
  if (!env || !*env) return 1;
  try {
    const double v = parse_double(env);
    if (v < 0 || v != std::floor(v) || v > 4096) throw Error(ErrorCode::InvalidArgument, "");
    return static_cast<unsigned>(v);
  } catch (const Error&) {
    throw UsageError(std::string("CAMFORGE_THREADS must be a non-negative integer, got '") + env + "'");
  }
}

struct Design {
  LoadedForce force;
  BranchSet set;
  bool exact_params{};
};

Design run_design(LoadedForce force, double stiffness, double preload, double travel_limit,
                  std::optional<double> window, DesignTolerances tol, bool exact_params) {
  DesignProblem problem;
  problem.force = force.spec;
  problem.stiffness = stiffness;
  problem.preload = preload;
  problem.travel_limit = travel_limit;
  problem.search_window = window;
  problem.tolerances = tol;
  DesignOptions options;
  options.both_stiffness_signs = !exact_params;
  options.include_zero_preload = !exact_params;
  options.threads = thread_count();
  Design d{std::move(force), {}, exact_params};
  d.set = design_branches(problem, options);
  return d;
}

Design design_from_flags(const Options& o) {
  DesignTolerances tol;
  tol.boundary = o.number_or("domain-tol", tol.boundary);
  tol.quadrature = o.number_or("quad-tol", tol.quadrature);
  return run_design(load_force(o), o.number("stiffness"), o.number("preload"), o.number("travel-limit"),
                    o.maybe_number("search-window"), tol, o.flag("exact-params"));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Design design_from_report(const DesignReport& r) {
  Design d = run_design(load_force(r.force), r.stiffness, r.preload, r.travel_limit, r.search_window,
                        {r.boundary_tolerance, r.quadrature_tolerance}, r.exact_params);
  if (d.set.branches.size() != r.branches.size()) {
    throw Error(ErrorCode::IoError, "design report does not match its own problem; regenerate it");
  }
  for (std::size_t i = 0; i < r.branches.size(); ++i) {
    const auto& b = d.set.branches[i];
    if (label_name(b.label()) != r.branches[i].label || b.domain().lo != r.branches[i].domain_lo ||
        b.domain().hi != r.branches[i].domain_hi) {
      throw Error(ErrorCode::IoError, "design report branch " + r.branches[i].label + " is stale; regenerate it");
    }
  }
  return d;
}

const TrackBranch& pick_branch(const BranchSet& set, const std::string& name) {
  const auto label = parse_label(name);
  if (!label) throw UsageError("flag --branch expects a label such as Y11 or Y14, got '" + name + "'");
  const TrackBranch* b = set.find(*label);
  if (!b) throw Error(ErrorCode::EmptyDomain, "branch " + name + " does not exist for this problem");
  return *b;
}

svg::Plot branch_plot(const TrackBranch& b, const std::vector<TrackSample>& samples) {
  svg::Plot p;
  p.title = std::string(label_name(b.label())) + ": K = " + format_shortest(b.stiffness()) +
            " N/m, Delta = " + format_shortest(b.preload()) + " m";
  p.x_label = "X [m]";
  p.y_label = "Y [m]";
  svg::Series s{std::string(label_name(b.label())), {}};
  for (const auto& t : samples) s.points.emplace_back(t.x, t.y);
  p.series.push_back(std::move(s));
  p.x_markers = {b.domain().lo, b.domain().hi};
  p.y_markers = {b.travel_limit(), -b.travel_limit()};
  return p;
}

// --- design --------------------------------------------------------------------

int cmd_design(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t samples = o.count_or("samples", 201);
  const std::size_t residual_samples = o.count_or("residual-samples", 257);
  if (residual_samples < 3) throw UsageError("flag --residual-samples must be at least 3");
  Design d = design_from_flags(o);
  DesignReport report = make_report(d.set, d.force.echo, d.exact_params, samples, residual_samples);
  if (o.flag("timing")) {
    report.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  std::vector<std::vector<TrackSample>> tables;
  for (const auto& b : d.set.branches) tables.push_back(sample_branch(b, samples));
  if (o.has("csv-dir")) {
    for (std::size_t i = 0; i < d.set.branches.size(); ++i) {
      const auto name = std::string(label_name(d.set.branches[i].label()));
      csv::write_file(fs::path(o.str("csv-dir")) / (name + ".csv"), csv::format_track(tables[i]));
    }
  }
  if (o.has("svg-dir")) {
    svg::Plot overlay;
    overlay.title = "Roller tracks for F(X) = " + d.force.spec->describe();
    overlay.x_label = "X [m]";
    overlay.y_label = "Y [m]";
    overlay.y_markers = {d.set.problem.travel_limit, -d.set.problem.travel_limit};
    for (std::size_t i = 0; i < d.set.branches.size(); ++i) {
      const auto& b = d.set.branches[i];
      const auto name = std::string(label_name(b.label()));
      csv::write_file(fs::path(o.str("svg-dir")) / (name + ".svg"), svg::render(branch_plot(b, tables[i])));
      svg::Series s{name, {}};
      for (const auto& t : tables[i]) s.points.emplace_back(t.x, t.y);
      overlay.series.push_back(std::move(s));
    }
    csv::write_file(fs::path(o.str("svg-dir")) / "overlay.svg", svg::render(overlay));
  }

  const std::string doc = serialize_report(report);
  if (o.has("report")) {
    csv::write_file(o.str("report"), doc);
    out << "branches=" << report.branches.size() << "\n";
    for (const auto& b : report.branches) {
      out << b.label << " K=" << format_shortest(b.stiffness) << " Delta=" << format_shortest(b.preload)
          << " domain=(" << format_shortest(b.domain_lo) << ", " << format_shortest(b.domain_hi) << ") "
          << b.lo_kind << "/" << b.hi_kind << " residual_sup_rel=" << format_shortest(b.residual_sup_rel) << "\n";
    }
    for (const auto& n : report.existence_notes) out << "note: " << n << "\n";
  } else {
    out << doc;
  }
  return kSuccess;
}

// --- simulate ------------------------------------------------------------------

int cmd_simulate(const Options& o, std::ostream& out) {
  SimConfig config;
  config.mass = o.number_or("mass", 1.0);
  config.dt = o.number_or("dt", 1e-5);
  config.t_end = o.number_or("t-end", 1.0);
  config.record_stride = static_cast<int>(o.count_or("stride", 1));
  config.lock_guard = o.maybe_number("lock-guard");
  const std::string method = o.str_or("method", "verlet");
  if (method == "verlet") {
    config.method = Integrator::VelocityVerlet;
  } else if (method == "rk4") {
    config.method = Integrator::RK4;
  } else {
    throw UsageError("flag --method expects verlet or rk4, got '" + method + "'");
  }
  try {
    config.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const double x0 = o.number("x0");
  const double v0 = o.number_or("v0", 0.0);

  std::optional<Track> track;
  std::shared_ptr<const ForceSpec> reference_force;
  if (o.has("track-csv")) {
    const auto cols = csv::read_two_columns(o.str("track-csv"));
    std::vector<TrackSample> samples;
    for (std::size_t i = 0; i < cols.first.size(); ++i) samples.push_back({cols.first[i], cols.second[i]});
    track.emplace(fit_track(samples, LinearGsm(o.number("stiffness"), o.number("travel-limit"))));
    if (o.has("force") || o.has("table")) reference_force = load_force(o).spec;
  } else {
    Design d = o.has("report") ? design_from_report(parse_report(read_text(o.str("report"))))
                               : design_from_flags(o);
    track.emplace(to_track(pick_branch(d.set, o.str("branch"))));
    reference_force = d.force.spec;
  }

  const SimResult result = simulate_track(*track, config, x0, v0);
  if (o.has("out")) csv::write_file(o.str("out"), csv::format_trajectory(result));
  out << "termination=" << to_string(result.termination) << " steps=" << result.steps
      << " t_stop=" << format_shortest(result.stop_t) << " x_stop=" << format_shortest(result.stop_x);
  if (result.samples.size() >= 2) out << " energy_drift=" << format_shortest(energy_drift(result));
  out << "\n";
  if (o.flag("compare-reference")) {
    if (!reference_force) throw UsageError("--compare-reference needs --force or --table");
    const SimResult ref = simulate_reference(*reference_force, config, x0, v0);
    out << "reference_sup_dx=" << format_shortest(compare_trajectories(result, ref)) << "\n";
  }
  return kSuccess;
}

// --- verify --------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  const std::size_t n = o.count_or("residual-samples", 257);
  if (n < 3) throw UsageError("flag --residual-samples must be at least 3");
  struct Row {
    std::string name;
    ResidualReport res;
  };
  std::vector<Row> rows;
  double threshold = 0.0;
  if (o.has("report")) {
    threshold = o.number_or("threshold", 1e-6);
    Design d = design_from_report(parse_report(read_text(o.str("report"))));
    std::shared_ptr<const ForceSpec> other;
    if (o.has("force") || o.has("table")) other = load_force(o).spec;
    for (const auto& b : d.set.branches) {
      const auto res = other ? track_residual(to_track(b), *other, n, b.boundary_tolerance())
                             : reconstruction_residual(b, n);
      rows.push_back({std::string(label_name(b.label())), res});
    }
  } else if (o.has("track-csv")) {
    threshold = o.number_or("threshold", 1e-3);
    const auto force = load_force(o);
    const auto cols = csv::read_two_columns(o.str("track-csv"));
    std::vector<TrackSample> samples;
    for (std::size_t i = 0; i < cols.first.size(); ++i) samples.push_back({cols.first[i], cols.second[i]});
    const Track track = fit_track(samples, LinearGsm(o.number("stiffness"), o.number("travel-limit")));
    rows.push_back({fs::path(o.str("track-csv")).filename().string(),
                    track_residual(track, *force.spec, n, o.number_or("domain-tol", 1e-10))});
  } else {
    throw UsageError("verify needs --report or --track-csv");
  }

  bool pass = true;
  out << "track,sup_abs,rms_abs,sup_rel,rms_rel,status\n";
  for (const auto& r : rows) {
    const bool ok = r.res.sup_rel <= threshold;
    pass = pass && ok;
    out << r.name << "," << format_shortest(r.res.sup_abs) << "," << format_shortest(r.res.rms_abs) << ","
        << format_shortest(r.res.sup_rel) << "," << format_shortest(r.res.rms_rel) << ","
        << (ok ? "pass" : "fail") << "\n";
  }
  out << (pass ? "PASS" : "FAIL") << " threshold=" << format_shortest(threshold) << "\n";
  return pass ? kSuccess : kVerifyFailed;
}

// --- gsm -----------------------------------------------------------------------

int cmd_gsm(const Options& o, std::ostream& out, std::ostream& err) {
  GsmParams p{o.number("k1"), o.number("k2"), o.number_or("half-gap", 0.0), o.number("rod-length")};
  try {
    p.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const double range = o.number_or("range", 0.99 * p.rod_length);
  if (!(range > 0.0 && range < p.rod_length)) throw UsageError("flag --range must satisfy 0 < range < rod length");
  const std::size_t points = o.count_or("points", 201);
  if (points < 2) throw UsageError("flag --points must be at least 2");

  std::string table = "Y,F,K\n";
  svg::Series force_curve{"F(Y)", {}};
  for (std::size_t i = 0; i < points; ++i) {
    const double y = -range + 2.0 * range * static_cast<double>(i) / static_cast<double>(points - 1);
    const double f = gsm_force(p, y);
    table += format_shortest(y) + "," + format_shortest(f) + "," + format_shortest(gsm_stiffness(p, y)) + "\n";
    force_curve.points.emplace_back(y, f);
  }
  std::ostream& summary = o.has("csv") ? out : err;
  if (o.has("csv")) {
    csv::write_file(o.str("csv"), table);
  } else {
    out << table;
  }
  if (o.has("svg")) {
    svg::Plot plot;
    plot.title = "GSM force, K1 = " + format_shortest(p.k_vertical) + ", K2 = " + format_shortest(p.k_oblique) +
                 ", B = " + format_shortest(p.half_gap);
    plot.x_label = "Y [m]";
    plot.y_label = "F [N]";
    plot.series.push_back(std::move(force_curve));
    plot.x_markers = {-p.rod_length, p.rod_length};
    csv::write_file(o.str("svg"), svg::render(plot));
  }
  summary << "qzs=" << (is_quasi_zero_stiffness(p) ? "true" : "false");
  if (p.half_gap == 0.0) summary << " linear_stiffness=" << format_shortest(linear_stiffness(p).stiffness);
  summary << "\n";
  return kSuccess;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::NonIntegerExponent:
    case ErrorCode::InvalidArgument:
      return kUsageError;
    default:
      return kModelError;
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Roller-track synthesis for target nonlinear restoring forces", "camforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* design = app.add_subcommand("design", "enumerate every valid roller track for a target force");
  Options design_opts(design, {"force", "gsm", "design"});
  add_design_options(design_opts);
  design_opts.add("samples", "(X, Y) samples per branch in the report and CSVs (default 201)");
  design_opts.add("residual-samples", "Chebyshev points for the reconstruction residual (default 257)");
  design_opts.add("report", "write the JSON report here instead of stdout");
  design_opts.add("csv-dir", "write one X,Y CSV per branch into this directory");
  design_opts.add("svg-dir", "write one SVG per branch plus overlay.svg into this directory");
  design_opts.add_flag("timing", "record wall-clock duration in the report");

  auto* simulate = app.add_subcommand("simulate", "integrate the equation of motion on one track");
  Options sim_opts(simulate, {"force", "gsm", "design", "simulate"});
  add_design_options(sim_opts);
  sim_opts.add("report", "design report to take the branch from");
  sim_opts.add("branch", "branch label, e.g. Y14");
  sim_opts.add("track-csv", "X,Y track profile instead of a designed branch");
  sim_opts.add("mass", "mass M [kg] (default 1)");
  sim_opts.add("x0", "initial position [m]");
  sim_opts.add("v0", "initial velocity [m/s] (default 0)");
  sim_opts.add("dt", "time step [s] (default 1e-5)");
  sim_opts.add("t-end", "end time [s] (default 1)");
  sim_opts.add("method", "verlet (default) or rk4");
  sim_opts.add("stride", "record every n-th step (default 1)");
  sim_opts.add("lock-guard", "lock distance from the travel limit [m] (default 1e-6 L)");
  sim_opts.add("out", "trajectory CSV path (t,X,V,E)");
  sim_opts.add_flag("compare-reference", "also integrate M X'' = F(X) and print sup |dX|");

  auto* verify = app.add_subcommand("verify", "check that tracks reproduce a target force");
  Options verify_opts(verify, {"force", "gsm", "design", "verify"});
  add_design_options(verify_opts);
  verify_opts.add("report", "design report whose branches are checked");
  verify_opts.add("track-csv", "X,Y track profile to check");
  verify_opts.add("residual-samples", "Chebyshev points (default 257)");
  verify_opts.add("threshold", "relative sup residual limit (default 1e-6 report, 1e-3 CSV)");

  auto* gsm = app.add_subcommand("gsm", "tabulate force and stiffness of the general spring model");
  Options gsm_opts(gsm, {"gsm"});
  gsm_opts.add("k1", "vertical spring stiffness K1 [N/m]");
  gsm_opts.add("k2", "oblique spring stiffness K2 [N/m]");
  gsm_opts.add("half-gap", "half gap B [m] (default 0)");
  gsm_opts.add("rod-length", "rod length L [m]");
  gsm_opts.add("range", "tabulate Y over [-range, range] (default 0.99 L)");
  gsm_opts.add("points", "number of rows (default 201)");
  gsm_opts.add("csv", "write the Y,F,K table here instead of stdout");
  gsm_opts.add("svg", "write a force plot here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (design->parsed()) {
      design_opts.merge_config();
      return cmd_design(design_opts, out);
    }
    if (simulate->parsed()) {
      sim_opts.merge_config();
      return cmd_simulate(sim_opts, out);
    }
    if (verify->parsed()) {
      verify_opts.merge_config();
      return cmd_verify(verify_opts, out);
    }
    gsm_opts.merge_config();
    return cmd_gsm(gsm_opts, out, err);
  } catch (const UsageError& e) {
    err << "camforge: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "camforge: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "camforge: " << e.what() << "\n";
    return kModelError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  argv.reserve(storage.size());
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace camforge::cli
