#pragma once

// Batch experiment driver: configuration parsing and the five experiments
// (run, converge, entropy, dafermos, blowup), each writing one CSV file.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dafermos/diagnostics.hpp"
#include "dafermos/fv_reference.hpp"
#include "dafermos/solver.hpp"

namespace dafermos::cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Carries the help text; not an error.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

enum class Experiment { Run, Converge, Entropy, Dafermos, Blowup };
enum class SchemeChoice { DDG, DRKDG, Godunov, VanillaDG };
enum class IcChoice { SineShock, Rarefaction, Smooth };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
  Experiment experiment = Experiment::Run;
  SchemeChoice scheme = SchemeChoice::DDG;
  IcChoice ic = IcChoice::SineShock;
  int p = 6;
  int n_cells = 20;
  double cfl = 0.5;
  double t_end = 1.0;
  double output_dt = 0.0;  // 0: write only the initial and final state
  std::vector<int> n_list{10, 15, 20, 25, 30};
  std::vector<int> p_list{3, 6};
  std::vector<double> cfl_list{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  int reference_cells = 10000;
  double x_min = 0.0;
  double x_max = 2.0;
  std::string out_path = "-";

  /// Output times implied by output_dt, always including 0 and t_end.
  std::vector<double> output_times() const {
    std::vector<double> ts{0.0};
    if (output_dt > 0.0) {
      const long n = static_cast<long>(std::floor(t_end / output_dt + 1e-9));
      for (long i = 1; i <= n; ++i) {
        const double t = i * output_dt;
        if (t < t_end - 1e-12) ts.push_back(t);
      }
    }
    ts.push_back(t_end);
    return ts;
  }
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const char* name(Experiment e) {
  switch (e) {
    case Experiment::Run: return "run";
    case Experiment::Converge: return "converge";
    case Experiment::Entropy: return "entropy";
    case Experiment::Dafermos: return "dafermos";
    case Experiment::Blowup: return "blowup";
  }
  return "?";
}

inline const char* name(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::DDG: return "ddg";
    case SchemeChoice::DRKDG: return "drkdg";
    case SchemeChoice::Godunov: return "godunov";
    case SchemeChoice::VanillaDG: return "vanilla-dg";
  }
  return "?";
}

inline const char* name(IcChoice ic) {
  switch (ic) {
    case IcChoice::SineShock: return "sine-shock";
    case IcChoice::Rarefaction: return "rarefaction";
    case IcChoice::Smooth: return "smooth";
  }
  return "?";
}

inline InitialCondition initial_condition(IcChoice ic) {
  switch (ic) {
    case IcChoice::SineShock: return sine_shock();
    case IcChoice::Rarefaction: return rarefaction();
    case IcChoice::Smooth: return smooth_wave();
  }
  throw InvalidArgument("unknown initial condition");
}

inline Scheme to_scheme(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::DDG: return Scheme::DDG;
    case SchemeChoice::DRKDG: return Scheme::DRKDG;
    case SchemeChoice::VanillaDG: return Scheme::VanillaDG;
    case SchemeChoice::Godunov: break;
  }
  throw UsageError("scheme: godunov is not a DG scheme");
}

namespace detail {

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) out += format_number(xs[i]);
    else out += std::to_string(xs[i]);
  }
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || !std::isfinite(x))
    throw UsageError(key + ": malformed number '" + v + "'");
  return x;
}

inline int parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw UsageError(key + ": malformed integer '" + v + "'");
  return static_cast<int>(x);
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& key, const std::string& v, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse(key, trim(item)));
  if (out.empty()) throw UsageError(key + ": empty list");
  return out;
}

}  // namespace detail

inline Experiment parse_experiment(const std::string& v) {
  if (v == "run") return Experiment::Run;
  if (v == "converge") return Experiment::Converge;
  if (v == "entropy") return Experiment::Entropy;
  if (v == "dafermos") return Experiment::Dafermos;
  if (v == "blowup") return Experiment::Blowup;
  throw UsageError("experiment: unknown experiment '" + v + "'");
}

/// Per-experiment defaults before the config file and flags are applied.
inline RunConfig defaults_for(Experiment e) {
  RunConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::Converge:
      c.ic = IcChoice::Smooth;
      c.t_end = 8.0;
      break;
    case Experiment::Dafermos:
      c.n_cells = 50;
      c.output_dt = 0.01;
      break;
    default:
      break;
  }
  return c;
}

/// Applies one key = value pair; keys are the long flag names.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "scheme") {
    if (value == "ddg") c.scheme = SchemeChoice::DDG;
    else if (value == "drkdg") c.scheme = SchemeChoice::DRKDG;
    else if (value == "godunov") c.scheme = SchemeChoice::Godunov;
    else if (value == "vanilla-dg") c.scheme = SchemeChoice::VanillaDG;
    else throw UsageError("scheme: unknown scheme '" + value + "'");
  } else if (key == "ic") {
    if (value == "sine-shock") c.ic = IcChoice::SineShock;
    else if (value == "rarefaction") c.ic = IcChoice::Rarefaction;
    else if (value == "smooth") c.ic = IcChoice::Smooth;
    else throw UsageError("ic: unknown initial condition '" + value + "'");
  } else if (key == "p") {
    c.p = parse_int(key, value);
  } else if (key == "n") {
    c.n_cells = parse_int(key, value);
  } else if (key == "cfl") {
    c.cfl = parse_real(key, value);
  } else if (key == "t-end") {
    c.t_end = parse_real(key, value);
  } else if (key == "output-dt") {
    c.output_dt = parse_real(key, value);
  } else if (key == "n-list") {
    c.n_list = parse_list<int>(key, value, parse_int);
  } else if (key == "p-list") {
    c.p_list = parse_list<int>(key, value, parse_int);
  } else if (key == "cfl-list") {
    c.cfl_list = parse_list<double>(key, value, parse_real);
  } else if (key == "reference-cells") {
    c.reference_cells = parse_int(key, value);
  } else if (key == "out") {
    c.out_path = value;
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

inline void validate(const RunConfig& c) {
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0)) throw UsageError(std::string(key) + ": must be positive, got " + format_number(v));
  };
  positive("p", c.p);
  positive("n", c.n_cells);
  positive("cfl", c.cfl);
  positive("t-end", c.t_end);
  positive("reference-cells", c.reference_cells);
  if (c.output_dt < 0.0) throw UsageError("output-dt: must be nonnegative");
  for (int n : c.n_list) positive("n-list", n);
  for (int p : c.p_list) positive("p-list", p);
  for (double x : c.cfl_list) positive("cfl-list", x);
  if (c.experiment == Experiment::Converge && c.n_list.size() < 2)
    throw UsageError("n-list: convergence needs at least two grids");
  const bool dg_only = c.experiment == Experiment::Converge || c.experiment == Experiment::Blowup;
  if (dg_only && c.scheme == SchemeChoice::Godunov)
    throw UsageError(std::string("scheme: godunov is not available for ") + name(c.experiment));
  // the uncorrected scheme is only offered where blowing up is an admissible outcome
  const bool may_blow_up = c.experiment == Experiment::Run || c.experiment == Experiment::Blowup;
  if (c.scheme == SchemeChoice::VanillaDG && !may_blow_up)
    throw UsageError(std::string("scheme: vanilla-dg is not available for ") + name(c.experiment));
  if (c.experiment == Experiment::Entropy && c.scheme != SchemeChoice::DDG)
    throw UsageError("scheme: the entropy experiment measures the semidiscrete scheme, use ddg");
  if (c.scheme == SchemeChoice::Godunov && c.experiment == Experiment::Run && c.cfl > 1.0)
    throw UsageError("cfl: godunov requires cfl in (0, 1]");
}

/// Reads `key = value` lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config: line " + std::to_string(lineno) + " is not of the form key = value");
    out.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return out;
}

/// Parses the arguments after the program name. Config file values are
/// applied first, flags override them.
inline RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Dafermos-corrected discontinuous Galerkin experiments", "dafermos-dg"};
  std::string experiment, config_file;
  std::map<std::string, std::string> flags;
  app.add_option("experiment", experiment, "run | converge | entropy | dafermos | blowup")->required();
  app.add_option("--config", config_file, "key = value file");
  const std::vector<std::pair<std::string, std::string>> options{
      {"scheme", "ddg | drkdg | godunov | vanilla-dg"},
      {"ic", "sine-shock | rarefaction | smooth"},
      {"p", "polynomial degree"},
      {"n", "number of cells"},
      {"cfl", "CFL number"},
      {"t-end", "final time"},
      {"output-dt", "output interval"},
      {"n-list", "comma-separated cell counts"},
      {"p-list", "comma-separated degrees"},
      {"cfl-list", "comma-separated CFL numbers"},
      {"reference-cells", "cells of the Godunov reference"},
      {"out", "output path, - for stdout"}};
  for (const auto& [k, description] : options) app.add_option("--" + k, flags[k], description);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    if (args.empty()) throw UsageError("experiment: missing experiment\n" + app.help());
    throw UsageError(e.what());
  }

  RunConfig c = defaults_for(parse_experiment(experiment));
  if (!config_file.empty())
    for (const auto& [k, v] : read_config_file(config_file)) apply_setting(c, k, v);
  for (const auto& [k, description] : options)
    if (app.count("--" + k) > 0) apply_setting(c, k, flags[k]);
  validate(c);
  return c;
}

/// One-line resolved configuration, written as the first CSV line.
inline std::string describe(const RunConfig& c) {
  std::string s = "# dafermos-dg";
  s += " experiment=" + std::string(name(c.experiment));
  s += " scheme=" + std::string(name(c.scheme));
  s += " ic=" + std::string(name(c.ic));
  s += " p=" + std::to_string(c.p);
  s += " n=" + std::to_string(c.n_cells);
  s += " cfl=" + format_number(c.cfl);
  s += " t_end=" + format_number(c.t_end);
  s += " output_dt=" + format_number(c.output_dt);
  s += " n_list=" + detail::join(c.n_list);
  s += " p_list=" + detail::join(c.p_list);
  s += " cfl_list=" + detail::join(c.cfl_list);
  s += " reference_cells=" + std::to_string(c.reference_cells);
  s += " domain=[" + format_number(c.x_min) + "," + format_number(c.x_max) + ")";
  s += " flux=llf entropy=u^2 law=burgers";
  return s;
}

/// CSV rows accumulated in memory and written once.
class CsvWriter {
 public:
  explicit CsvWriter(const RunConfig& c) { out_ << describe(c) << '\n'; }

  void header(const std::string& cols) { out_ << cols << '\n'; }

  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

  void comment(const std::string& text) { out_ << "# " << text << '\n'; }

  void flush_to(const std::string& path) const {
    if (path == "-") {
      std::cout << out_.str() << std::flush;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file '" + path + "'");
    f << out_.str();
    if (!f) throw IoError("failed writing output file '" + path + "'");
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

  std::ostringstream out_;
};

namespace detail {

inline int run_experiment(const RunConfig& c, CsvWriter& csv) {
  const Burgers law;
  const InitialCondition ic = initial_condition(c.ic);
  const Mesh1D mesh(c.x_min, c.x_max, c.n_cells);
  csv.header("time,cell,node,x,u");
  if (c.scheme == SchemeChoice::Godunov) {
    FVOptions fo;
    fo.x_min = c.x_min;
    fo.x_max = c.x_max;
    try {
      const FVSolution sol = fv_solve(law, ic.value, c.n_cells, c.cfl, c.t_end, c.output_times(), fo);
      for (const auto& snap : sol.snapshots)
        for (int k = 0; k < c.n_cells; ++k)
          csv.row(snap.time, k, 0, mesh.cell_left(k) + 0.5 * mesh.cell_length(), snap.means[k]);
      csv.comment("status=ok t_reached=" + format_number(c.t_end));
      return kExitOk;
    } catch (const BlowUp& e) {
      csv.comment("status=blowup t_reached=" + format_number(e.time()));
      return kExitBlowUp;
    }
  }
  auto space = make_space(mesh, c.p);
  RunOptions opts;
  opts.scheme = to_scheme(c.scheme);
  opts.rule.cfl = c.cfl;
  opts.t_end = c.t_end;
  opts.output_times = c.output_times();
  RunObserver obs;
  obs.on_output = [&](double t, const DGState& s) {
    for (int j = 0; j < s.n_cells(); ++j)
      for (int k = 0; k < space->n_nodes(); ++k) csv.row(t, j, k, space->node_x(j, k), s.coeffs(k, j));
  };
  const RunResult r = run_dg(interpolate_ic(ic.value, space), law, opts, obs);
  if (r.blew_up) {
    csv.comment("status=blowup t_reached=" + format_number(r.t_reached));
    return kExitBlowUp;
  }
  csv.comment("status=ok t_reached=" + format_number(r.t_reached));
  return kExitOk;
}

inline int converge_experiment(const RunConfig& c, CsvWriter& csv) {
  const Burgers law;
  const InitialCondition ic = initial_condition(c.ic);
  std::vector<double> e1, e2;
  double lambda = 0.0;  // dt = lambda dx^2, fixed by the CFL rule on the first grid
  for (int n : c.n_list) {
    auto space = make_space(Mesh1D(c.x_min, c.x_max, n), c.p);
    const DGState u0 = interpolate_ic(ic.value, space);
    const double dx = space->mesh().cell_length();
    if (lambda == 0.0) {
      TimeStepRule rule;
      rule.cfl = c.cfl;
      lambda = rule.dt(u0, law) / (dx * dx);
    }
    RunOptions opts;
    opts.scheme = to_scheme(c.scheme);
    opts.rule.fixed_dt = lambda * dx * dx;
    opts.t_end = c.t_end;
    const RunResult r = run_dg(u0, law, opts);
    if (r.blew_up) {
      csv.comment("status=blowup n_cells=" + std::to_string(n) + " t_reached=" + format_number(r.t_reached));
      return kExitBlowUp;
    }
    const ErrorNorms e =
        error_norms(r.final_state, [&](double x) { return burgers_smooth_exact(ic, x, c.t_end); });
    e1.push_back(e.l1);
    e2.push_back(e.l2);
  }
  const ConvergenceTable t = eoc(c.n_list, e1, e2);
  csv.header("n_cells,e1,e2,eoc1,eoc2");
  for (std::size_t i = 0; i < t.n_cells.size(); ++i) {
    if (i == 0) {
      csv.row(t.n_cells[i], t.errors_1norm[i], t.errors_2norm[i], std::string(), std::string());
    } else {
      csv.row(t.n_cells[i], t.errors_1norm[i], t.errors_2norm[i], t.eoc_1[i - 1], t.eoc_2[i - 1]);
    }
  }
  return kExitOk;
}

inline int entropy_experiment(const RunConfig& c, CsvWriter& csv) {
  const Burgers law;
  const InitialCondition ic = initial_condition(c.ic);
  auto space = make_space(Mesh1D(c.x_min, c.x_max, c.n_cells), c.p);
  RunOptions opts;
  opts.scheme = Scheme::DDG;
  opts.rule.cfl = c.cfl;
  opts.t_end = c.t_end;
  EntropyTrace trace;
  RunObserver obs;
  // the first stage of each step is evaluated on the state at the step's start time
  obs.on_ddg_rhs = [&](double t, int stage, const DDGRhs& rhs) {
    if (stage != 0) return;
    std::vector<double> v(rhs.reports.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = rhs.reports[j].violation();
    trace.record(t, 0.0, v);
  };
  const RunResult r = run_dg(interpolate_ic(ic.value, space), law, opts, obs);
  csv.header("time,cell,violation_pos_log10,violation_neg_log10");
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    for (std::size_t j = 0; j < trace.violation_pos_log10[i].size(); ++j)
      csv.row(trace.times[i], static_cast<int>(j), trace.violation_pos_log10[i][j], trace.violation_neg_log10[i][j]);
  if (r.blew_up) {
    csv.comment("status=blowup t_reached=" + format_number(r.t_reached));
    return kExitBlowUp;
  }
  return kExitOk;
}

inline int dafermos_experiment(const RunConfig& c, CsvWriter& csv) {
  const Burgers law;
  const InitialCondition ic = initial_condition(c.ic);
  const std::vector<double> times = c.output_times();
  auto space = make_space(Mesh1D(c.x_min, c.x_max, c.n_cells), c.p);
  std::vector<std::vector<double>> curves;
  bool blew_up = false;
  for (Scheme s : {Scheme::DDG, Scheme::DRKDG}) {
    RunOptions opts;
    opts.scheme = s;
    opts.rule.cfl = c.cfl;
    opts.t_end = c.t_end;
    opts.output_times = times;
    std::vector<double> ts, es;
    RunObserver obs;
    obs.on_output = [&](double t, const DGState& st) {
      ts.push_back(t);
      es.push_back(total_entropy_dg(st, law));
    };
    const RunResult r = run_dg(interpolate_ic(ic.value, space), law, opts, obs);
    blew_up = blew_up || r.blew_up;
    std::vector<double> curve;
    for (double t : times) curve.push_back(ts.empty() ? std::nan("") : interpolate_linear(ts, es, t));
    curves.push_back(std::move(curve));
  }
  FVOptions fo;
  fo.x_min = c.x_min;
  fo.x_max = c.x_max;
  const FVSolution ref = fv_solve(law, ic.value, c.reference_cells, std::min(c.cfl, 1.0), c.t_end, times, fo);
  csv.header("time,entropy_ddg,entropy_drkdg,entropy_godunov");
  for (std::size_t i = 0; i < times.size(); ++i)
    csv.row(times[i], curves[0][i], curves[1][i], interpolate_linear(ref.entropy_times, ref.entropy, times[i]));
  if (blew_up) {
    csv.comment("status=blowup");
    return kExitBlowUp;
  }
  return kExitOk;
}

inline int blowup_experiment(const RunConfig& c, CsvWriter& csv) {
  const auto grid =
      blowup_scan(c.p_list, c.cfl_list, c.n_list, c.t_end, to_scheme(c.scheme), initial_condition(c.ic));
  csv.header("p,n_cells,cfl,t_reached");
  for (const auto& e : grid) csv.row(e.order, e.n_cells, e.cfl, e.t_reached);
  return kExitOk;
}

}  // namespace detail

/// Runs the configured experiment and writes its CSV. Returns the exit code.
inline int execute(const RunConfig& c) {
  CsvWriter csv(c);
  int code = kExitOk;
  switch (c.experiment) {
    case Experiment::Run: code = detail::run_experiment(c, csv); break;
    case Experiment::Converge: code = detail::converge_experiment(c, csv); break;
    case Experiment::Entropy: code = detail::entropy_experiment(c, csv); break;
    case Experiment::Dafermos: code = detail::dafermos_experiment(c, csv); break;
    case Experiment::Blowup: code = detail::blowup_experiment(c, csv); break;
  }
  csv.flush_to(c.out_path);
  return code;
}

/// Full command-line entry point with error-to-exit-code mapping.
inline int main_entry(const std::vector<std::string>& args, std::ostream& err = std::cerr) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& e) {
    std::cout << e.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    return execute(config);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace dafermos::cli
