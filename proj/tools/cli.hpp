#pragma once

// Command-line front end. Every command writes to the given streams and
// returns its exit code: 0 ok, 1 usage, 2 numerical failure or verify
// violations, 3 no discrete spectrum / no bound state.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dirac_bounds/dirac_bounds.hpp"

namespace dirac_bounds::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kNoSpectrum = 3 };

struct Options {
  // potential
  std::string potential = "coulomb";
  double v = 1.0;
  double c = 0.0;
  double a = 0.0;
  // channel
  int d = 3;
  int j2 = 1;
  std::string tau = "+1";
  std::string mode = "spin";
  int nu = 0;
  double m = 1.0;
  // solver
  double rmax = 0.0;
  int npoints = 0;
  double tol = 1e-10;
  // output
  std::string csv;
  bool verbose = false;
  bool paper_constants = false;
  bool gnuplot = false;
  std::string config;
  // sweep / figure1
  double v_min = 0.05;
  double v_max = 14.0;
  int points = 50;
  std::string spacing = "log";
  std::string outputs = "exact";
  int jobs = 1;
  bool oracle = false;
  // spectrum
  std::string method = "exact";
  // regions
  std::optional<double> e1;
  // verify
  std::string corpus;
  bool inject_fault = false;
  int scan_points = 5;
};

namespace detail {

inline std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

inline std::string csv_number(const std::optional<double>& x) { return x ? fmt("%#.9g", *x) : std::string(); }

inline int parse_tau(const std::string& s) {
  if (s == "+1" || s == "1" || s == "+") return 1;
  if (s == "-1" || s == "-") return -1;
  throw UsageError("--tau must be +1 or -1");
}

inline Channel channel_from(const Options& o) {
  Channel ch{o.d, o.j2, parse_tau(o.tau), parse_symmetry(o.mode), o.nu, o.m};
  try {
    validate(ch);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return ch;
}

inline PotentialModel potential_from(const Options& o, double v) {
  const auto& p = o.potential;
  if (p == "oscillator") return Oscillator{v};
  if (p == "linear") return Linear{v};
  if (p == "coulomb") return Coulomb{v};
  if (p == "shifted-coulomb") return ShiftedCoulomb{v, o.c};
  if (p == "kratzer") return Kratzer{o.a, v, o.c};
  if (p == "log") return Log{v};
  throw UsageError("unknown potential '" + p + "'");
}

inline DiracOptions dirac_options_from(const Options& o) {
  DiracOptions d;
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
  d.tol = o.tol;
  if (o.rmax < 0.0) throw UsageError("--rmax must be positive");
  if (o.rmax > 0.0) d.radial.r_max = o.rmax;
  if (o.npoints != 0) {
    if (o.npoints < 1000) throw UsageError("--npoints must be at least 1000");
    const double outer = o.rmax > 0.0 ? o.rmax : d.radial.initial_r_max;
    d.radial.max_step = std::log(outer / d.radial.r_min) / (o.npoints - 1);
  }
  return d;
}

inline std::shared_ptr<SpectralConstants> constants_from(const Options& o) {
  return std::make_shared<SpectralConstants>(o.paper_constants ? SpectralConstants::published()
                                                               : SpectralConstants());
}

struct Row {
  double v = 0.0;
  std::optional<double> exact, oracle, envelope, lo, hi;
  std::string status = "ok";
};

inline const char* csv_header() { return "v,E_exact,E_oracle,E_envelope,region_lo,region_hi,status"; }

inline std::string csv_line(const Row& r) {
  return fmt("%#.9g", r.v) + "," + csv_number(r.exact) + "," + csv_number(r.oracle) + "," + csv_number(r.envelope) +
         "," + csv_number(r.lo) + "," + csv_number(r.hi) + "," + r.status;
}

struct RowPlan {
  bool exact = true;
  bool oracle = false;
  bool envelope = false;
};

inline std::string status_of(const std::exception& e) {
  if (dynamic_cast<const NoDiscreteSpectrum*>(&e)) return "no-discrete-spectrum";
  if (dynamic_cast<const NoBoundState*>(&e)) return "no-bound-state";
  if (dynamic_cast<const NotApplicable*>(&e)) return "not-applicable";
  return "numerical-failure";
}

inline Row compute_row(double v, const Options& o, const Channel& ch, const RowPlan& plan, SpectralConstants& constants,
                       const DiracOptions& dopts) {
  Row row;
  row.v = v;
  const auto V = potential_from(o, v);
  auto note = [&row](const std::exception& e) {
    if (row.status == "ok") row.status = status_of(e);
  };
  if (plan.exact) {
    try {
      row.exact = exact_energy(V, ch, constants).E;
    } catch (const Error& e) {
      note(e);
    }
  }
  if (plan.oracle) {
    try {
      row.oracle = dirac_energy(V, ch, dopts).E;
    } catch (const Error& e) {
      note(e);
    }
  }
  if (std::holds_alternative<Log>(V) && v != 0.0) {
    const auto p = derive(ch);
    try {
      const double u1 = log_u1(ch.m, constants.log_e1(p.L, ch.nu));
      const auto region = log_spectral_region(v, ch, u1);
      row.lo = region.lo;
      row.hi = region.hi;
    } catch (const Error& e) {
      note(e);
    }
    if (plan.envelope) {
      try {
        row.envelope = log_envelope_bound(v, ch).value;
      } catch (const Error& e) {
        note(e);
      }
    }
  }
  return row;
}

inline std::vector<Row> compute_rows(const std::vector<double>& vs, const Options& o, const Channel& ch,
                                     const RowPlan& plan, SpectralConstants& constants, const DiracOptions& dopts) {
  std::vector<Row> rows(vs.size());
  const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(vs.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < vs.size(); ++i) rows[i] = compute_row(vs[i], o, ch, plan, constants, dopts);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < vs.size(); i = next++) rows[i] = compute_row(vs[i], o, ch, plan, constants, dopts);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

inline std::vector<double> sample_points(double lo, double hi, int n, const std::string& spacing) {
  if (!(lo < hi)) throw UsageError("--v-min must be below --v-max");
  if (n < 2) throw UsageError("--points must be at least 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (spacing == "linear") {
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  } else if (spacing == "log") {
    if (!(lo > 0.0)) throw UsageError("log spacing needs --v-min > 0");
    for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    out.back() = hi;
  } else {
    throw UsageError("--spacing must be linear or log");
  }
  return out;
}

inline RowPlan parse_outputs(const std::string& list) {
  RowPlan plan{false, false, false};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "exact") plan.exact = true;
    else if (item == "oracle") plan.oracle = true;
    else if (item == "envelope") plan.envelope = true;
    else throw UsageError("unknown output '" + item + "' (expected exact, oracle, envelope)");
  }
  return plan;
}

inline void write_gnuplot(const std::string& csv_path, std::ostream& out) {
  const std::string script = csv_path + ".gp";
  std::ofstream gp(script, std::ios::binary);
  if (!gp) throw UsageError("cannot write " + script);
  gp << "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set logscale x\n"
        "set xlabel 'v'\n"
        "set ylabel 'E'\n"
        "plot '"
     << csv_path
     << "' using 1:2 with lines, '' using 1:3 with points, '' using 1:4 with lines\n";
  out << "wrote " << script << "\n";
}

/// Writes rows to --csv PATH when given, else to `out`.
inline void emit_rows(const std::vector<Row>& rows, const Options& o, std::ostream& out) {
  std::ostringstream body;
  body << csv_header() << '\n';
  for (const auto& r : rows) body << csv_line(r) << '\n';
  if (o.csv.empty()) {
    if (o.gnuplot) throw UsageError("--gnuplot needs --csv PATH");
    out << body.str();
    return;
  }
  std::ofstream f(o.csv, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.csv);
  f << body.str();
  f.close();
  out << "wrote " << rows.size() << " rows to " << o.csv << "\n";
  if (o.gnuplot) write_gnuplot(o.csv, out);
}

inline int rows_exit_code(const std::vector<Row>& rows) {
  for (const auto& r : rows) {
    if (r.status != "ok" && r.status != "no-discrete-spectrum" && r.status != "no-bound-state") return kNumerical;
  }
  return kOk;
}

// ---- option registration ----

inline void add_channel(CLI::App* app, Options& o) {
  app->add_option("--d", o.d, "spatial dimension");
  app->add_option("--j2", o.j2, "twice the total angular momentum j");
  app->add_option("--tau", o.tau, "+1 or -1");
  app->add_option("--mode", o.mode, "spin or pseudo")->check(CLI::IsMember({"spin", "pseudo"}));
  app->add_option("--nu", o.nu, "node count");
  app->add_option("--m", o.m, "mass");
}

inline void add_potential(CLI::App* app, Options& o) {
  app->add_option("--potential", o.potential, "potential family")
      ->check(CLI::IsMember({"oscillator", "linear", "coulomb", "shifted-coulomb", "kratzer", "log"}));
  app->add_option("--v", o.v, "coupling v");
  app->add_option("--c", o.c, "constant shift c");
  app->add_option("--a", o.a, "1/r^2 coefficient a (kratzer)");
}

inline void add_solver(CLI::App* app, Options& o) {
  app->add_option("--rmax", o.rmax, "fixed outer radius for the oracle (default adaptive)");
  app->add_option("--npoints", o.npoints, "oracle grid points (>= 1000)");
  app->add_option("--tol", o.tol, "energy tolerance for the oracle");
}

inline void add_output(CLI::App* app, Options& o) {
  app->add_option("--csv", o.csv, "write CSV to PATH");
  app->add_flag("--verbose", o.verbose, "print bracket, residual and nodes");
  app->add_flag("--use-paper-constants", o.paper_constants, "use P = 3.3612545 and e(1) = 1.6411353 for L=1, nu=0");
  app->add_flag("--gnuplot", o.gnuplot, "also write PATH.gp next to the CSV");
  app->add_option("--config", o.config, "key=value file; command-line flags win");
}

inline void add_sweep_range(CLI::App* app, Options& o) {
  app->add_option("--v-min", o.v_min, "smallest coupling");
  app->add_option("--v-max", o.v_max, "largest coupling");
  app->add_option("--points", o.points, "number of couplings");
  app->add_option("--spacing", o.spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  app->add_option("--jobs", o.jobs, "worker threads");
}

/// Reads key=value lines and returns the equivalent flags. "true" becomes a
/// bare flag and "false" is dropped.
inline std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty() || key == "config") throw UsageError(path + ":" + std::to_string(lineno) + ": bad key");
    if (value == "false") continue;
    out.push_back("--" + key);
    if (value != "true") out.push_back(value);
  }
  return out;
}

/// Splices config-file flags in right after the subcommand name so that
/// later command-line values take precedence.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    else continue;
    if (args.empty()) break;
    auto extra = config_args(path);
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    break;
  }
  return args;
}

}  // namespace detail

// ---- commands ----

inline int cmd_spectrum(const Options& o, std::ostream& out) {
  const auto ch = detail::channel_from(o);
  const auto V = detail::potential_from(o, o.v);
  auto constants = detail::constants_from(o);
  EigenvalueSolution s;
  if (o.method == "exact") {
    s = exact_energy(V, ch, *constants);
  } else if (o.method == "oracle") {
    s = dirac_energy(V, ch, detail::dirac_options_from(o));
  } else {
    if (!std::holds_alternative<Log>(V)) throw NotApplicable("--method envelope is available for the log potential");
    const auto b = log_envelope_bound(o.v, ch);
    out << "E=" << detail::fmt("%.6f", b.value) << "\n";
    if (o.verbose) {
      out << "direction=" << to_string(b.direction) << "\n";
      out << "t_opt=" << detail::fmt("%.9g", b.t_opt) << "\n";
      out << "q_opt=" << detail::fmt("%.9g", b.q_opt) << "\n";
    }
    return kOk;
  }
  out << "E=" << detail::fmt("%.6f", s.E) << "\n";
  if (o.verbose) {
    out << "E_full=" << detail::fmt("%.15g", s.E) << "\n";
    out << "bracket=[" << detail::fmt("%.12g", s.bracket.lo) << ", " << detail::fmt("%.12g", s.bracket.hi) << "]\n";
    out << "residual=" << detail::fmt("%.3g", s.residual) << "\n";
    out << "nodes=" << s.nodes << "\n";
    out << "method=" << o.method << "\n";
    if (!s.branch_note.empty()) out << "note=" << s.branch_note << "\n";
  }
  if (!o.csv.empty()) {
    detail::Row row;
    row.v = o.v;
    (o.method == "oracle" ? row.oracle : row.exact) = s.E;
    detail::emit_rows({row}, o, out);
  }
  return kOk;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  const auto ch = detail::channel_from(o);
  const auto plan = detail::parse_outputs(o.outputs);
  const auto vs = detail::sample_points(o.v_min, o.v_max, o.points, o.spacing);
  auto constants = detail::constants_from(o);
  const auto dopts = detail::dirac_options_from(o);
  const auto rows = detail::compute_rows(vs, o, ch, plan, *constants, dopts);
  detail::emit_rows(rows, o, out);
  return detail::rows_exit_code(rows);
}

/// Log potential, E from the implicit formula and the envelope bound E_L,
/// on log-spaced v plus a final row at v = u1 where E = 0.
inline int cmd_figure1(Options o, std::ostream& out) {
  o.potential = "log";
  const auto ch = detail::channel_from(o);
  auto constants = detail::constants_from(o);
  const auto dopts = detail::dirac_options_from(o);
  const auto p = derive(ch);
  const double u1 = log_u1(ch.m, constants->log_e1(p.L, ch.nu));
  auto vs = detail::sample_points(o.v_min, o.v_max, o.points, "log");
  if (u1 > vs.back()) vs.push_back(u1);
  const detail::RowPlan plan{true, o.oracle, true};
  auto rows = detail::compute_rows(vs, o, ch, plan, *constants, dopts);
  int code = detail::rows_exit_code(rows);
  for (auto& r : rows) {
    if (r.status == "ok" && r.exact && r.envelope && *r.envelope > *r.exact + 1e-12) {
      r.status = "envelope-above-exact";
      code = kNumerical;
    }
  }
  detail::emit_rows(rows, o, out);
  return code;
}

inline std::string cell(double m_sign, double m, bool v_pos) {
  // E = -mu + u/v, 0 < u < u1, with mu = m_sign * m.
  const double mu = m_sign * m;
  auto num = [](double x) { return detail::fmt("%g", x); };
  const std::string minus_mu = mu == 0.0 ? "0" : num(-mu);
  auto offset = [&](const std::string& term) {
    if (mu == 0.0) return term;
    return term + (mu > 0.0 ? " - " + num(mu) : " + " + num(-mu));
  };
  if (v_pos) return "(" + minus_mu + ", " + offset("u1/v") + ")";
  return "(" + offset("-u1/|v|") + ", " + minus_mu + ")";
}

inline int cmd_regions(const Options& o, std::ostream& out) {
  if (!(o.m >= 0.0)) throw UsageError("--m must be >= 0");
  Channel ch = detail::channel_from(o);
  const auto p = derive(ch);
  double e1 = 0.0;
  if (o.e1) {
    e1 = *o.e1;
  } else {
    auto constants = detail::constants_from(o);
    e1 = constants->log_e1(p.L, ch.nu);
  }
  const double u1 = log_u1(o.m, e1);
  out << "u1=" << detail::fmt("%.6f", u1) << " m=" << detail::fmt("%g", o.m) << " e1=" << detail::fmt("%.9g", e1)
      << " L=" << detail::fmt("%g", p.L) << " nu=" << ch.nu << "\n";
  out << "v>0 mu=+m " << cell(1.0, o.m, true) << "\n";
  out << "v>0 mu=-m " << cell(-1.0, o.m, true) << "\n";
  out << "v<0 mu=+m " << cell(1.0, o.m, false) << "\n";
  out << "v<0 mu=-m " << cell(-1.0, o.m, false) << "\n";
  return kOk;
}

inline std::string channel_label(const Channel& ch) {
  return "d=" + std::to_string(ch.d) + ",j2=" + std::to_string(ch.j2) + ",tau=" + (ch.tau > 0 ? "+1" : "-1") +
         ",mode=" + std::string(to_string(ch.mode)) + ",nu=" + std::to_string(ch.nu) + ",m=" + detail::fmt("%g", ch.m);
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<CorpusCase> corpus;
  if (o.corpus.empty()) {
    corpus = builtin_corpus();
  } else {
    std::ifstream in(o.corpus);
    if (!in) throw UsageError("cannot read corpus " + o.corpus);
    corpus = parse_corpus(in);
    if (corpus.empty()) throw UsageError("corpus " + o.corpus + " has no cases");
  }
  auto evaluator = standard_evaluator(detail::constants_from(o), detail::dirac_options_from(o));
  if (o.inject_fault) evaluator = faulty_evaluator(evaluator);

  int pass = 0, not_comparable = 0, violated = 0;
  for (const auto& cs : corpus) {
    ComparisonReport report;
    try {
      report = verify_ordering(cs.V1, cs.V2, cs.channels, evaluator);
    } catch (const NotComparable& e) {
      ++not_comparable;
      out << "NOT-COMPARABLE " << cs.name << " reason=\"" << e.what() << "\"\n";
      continue;
    }
    std::string scan_state = "off";
    if (o.scan_points >= 2 && !cs.channels.empty()) {
      try {
        const auto scan = family_scan(cs.V1, cs.V2, cs.channels.front(), o.scan_points, evaluator);
        scan_state = scan.monotone ? "monotone" : "non-monotone";
      } catch (const NoDiscreteSpectrum&) {
        scan_state = "skipped";
      } catch (const NoBoundState&) {
        scan_state = "skipped";
      }
    }
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& c : report.channels) {
      if (c.E1 && c.E2) min_margin = std::min(min_margin, c.margin);
    }
    const auto bad = report.violations();
    const bool ok = bad.empty() && scan_state != "non-monotone";
    ok ? ++pass : ++violated;
    out << (ok ? "PASS " : "VIOLATION ") << cs.name << " method=" << (report.method == EnergyMethod::exact ? "exact" : "oracle")
        << " channels=" << report.channels.size() << " skipped=" << report.count(CaseStatus::skipped)
        << " violations=" << bad.size() << " min_margin=" << (std::isfinite(min_margin) ? detail::fmt("%.3g", min_margin) : "none")
        << " scan=" << scan_state << "\n";
    for (const auto& c : bad) {
      out << "  channel " << channel_label(c.channel) << " E1=" << detail::fmt("%.9g", *c.E1)
          << " E2=" << detail::fmt("%.9g", *c.E2) << " margin=" << detail::fmt("%.3g", c.margin) << "\n";
    }
    if (o.verbose) {
      for (const auto& c : report.channels) {
        out << "  " << to_string(c.status) << " " << channel_label(c.channel);
        if (c.E1 && c.E2) out << " E1=" << detail::fmt("%.9g", *c.E1) << " E2=" << detail::fmt("%.9g", *c.E2);
        if (!c.note.empty()) out << " note=\"" << c.note << "\"";
        out << "\n";
      }
    }
  }
  out << "summary cases=" << corpus.size() << " pass=" << pass << " not-comparable=" << not_comparable
      << " violations=" << violated << "\n";
  return violated == 0 ? kOk : kNumerical;
}

/// Parses and runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dirac spectra under spin and pseudo-spin symmetry: exact formulas, numerical oracle, bounds"};
  app.name("dirac-bounds");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* spectrum = app.add_subcommand("spectrum", "single energy");
  detail::add_potential(spectrum, o);
  detail::add_channel(spectrum, o);
  detail::add_solver(spectrum, o);
  detail::add_output(spectrum, o);
  spectrum->add_option("--method", o.method, "exact, oracle or envelope")
      ->check(CLI::IsMember({"exact", "oracle", "envelope"}));

  auto* sweep = app.add_subcommand("sweep", "energies over a range of couplings");
  detail::add_potential(sweep, o);
  detail::add_channel(sweep, o);
  detail::add_solver(sweep, o);
  detail::add_output(sweep, o);
  detail::add_sweep_range(sweep, o);
  sweep->add_option("--outputs", o.outputs, "comma list of exact, oracle, envelope");

  auto* figure1 = app.add_subcommand("figure1", "log potential: E and the envelope bound E_L against v");
  detail::add_channel(figure1, o);
  detail::add_solver(figure1, o);
  detail::add_output(figure1, o);
  detail::add_sweep_range(figure1, o);
  figure1->add_flag("--oracle", o.oracle, "add the numerical oracle column");

  auto* verify = app.add_subcommand("verify", "comparison-theorem checks on a corpus of potential pairs");
  detail::add_solver(verify, o);
  detail::add_output(verify, o);
  verify->add_option("--corpus", o.corpus, "corpus file (default: built-in)");
  verify->add_flag("--inject-fault", o.inject_fault, "use a deliberately wrong energy evaluator");
  verify->add_option("--scan-points", o.scan_points, "family-scan samples per case (0 disables)");

  auto* regions = app.add_subcommand("regions", "the four spectral regions of the log potential");
  detail::add_channel(regions, o);
  detail::add_output(regions, o);
  regions->add_option("--e1", o.e1, "override F(1) for the channel");

  for (auto* sub : {spectrum, sweep, figure1, verify, regions}) {
    for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  try {
    args = detail::expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (figure1->parsed()) return cmd_figure1(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (regions->parsed()) return cmd_regions(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotApplicable& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoDiscreteSpectrum& e) {
    err << "no discrete spectrum: " << e.what() << "\n";
    return kNoSpectrum;
  } catch (const NoBoundState& e) {
    err << "no bound state: " << e.what() << "\n";
    return kNoSpectrum;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace dirac_bounds::cli
