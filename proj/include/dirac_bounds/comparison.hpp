#pragma once

// Numerical checks of the comparison theorem: V1 <= V2 pointwise implies
// E1 <= E2 channel by channel, and E(a) is nondecreasing along
// V1 + a (V2 - V1).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dirac_bounds/channel.hpp"
#include "dirac_bounds/dirac_solver.hpp"
#include "dirac_bounds/errors.hpp"
#include "dirac_bounds/exact_spectra.hpp"
#include "dirac_bounds/potential.hpp"

namespace dirac_bounds {

enum class EnergyMethod { exact, oracle };

/// Computes one energy; throws NoDiscreteSpectrum / NoBoundState when none exists.
using EnergyEvaluator = std::function<double(const PotentialModel&, const Channel&, EnergyMethod)>;

[[nodiscard]] inline EnergyEvaluator standard_evaluator(std::shared_ptr<SpectralConstants> constants,
                                                        DiracOptions opts = {}) {
  return [constants = std::move(constants), opts](const PotentialModel& V, const Channel& ch, EnergyMethod method) {
    if (method == EnergyMethod::exact) return exact_energy(V, ch, *constants).E;
    return dirac_energy(V, ch, opts).E;
  };
}

[[nodiscard]] inline EnergyEvaluator standard_evaluator() {
  return standard_evaluator(std::make_shared<SpectralConstants>());
}

/// Test double that reports -E; any strictly ordered pair then shows a violation.
[[nodiscard]] inline EnergyEvaluator faulty_evaluator(EnergyEvaluator base) {
  return [base = std::move(base)](const PotentialModel& V, const Channel& ch, EnergyMethod method) {
    return -base(V, ch, method);
  };
}

struct PointwiseCheck {
  bool ordered = true;
  double max_excess = 0.0;  // max of V1 - V2 over the samples
  double r_at = 0.0;
  int samples = 0;
};

/// V1(r) <= V2(r) on 1000 log-spaced radii in [1e-4, 1e3].
[[nodiscard]] inline PointwiseCheck pointwise_order(const PotentialModel& V1, const PotentialModel& V2,
                                                    int samples = 1000, double r_lo = 1e-4, double r_hi = 1e3) {
  PointwiseCheck out;
  out.samples = samples;
  out.max_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (samples - 1));
    const double a = evaluate(V1, r);
    const double b = evaluate(V2, r);
    const double excess = a - b;
    if (excess > out.max_excess) {
      out.max_excess = excess;
      out.r_at = r;
    }
    if (excess > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) out.ordered = false;
  }
  return out;
}

enum class CaseStatus { pass, violation, skipped };

[[nodiscard]] inline const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "PASS";
    case CaseStatus::violation: return "VIOLATION";
    case CaseStatus::skipped: return "SKIPPED";
  }
  return "?";
}

struct ChannelOutcome {
  Channel channel;
  std::optional<double> E1;
  std::optional<double> E2;
  double margin = 0.0;  // E2 - E1
  CaseStatus status = CaseStatus::skipped;
  std::string note;
};

struct ComparisonReport {
  PointwiseCheck pointwise;
  EnergyMethod method = EnergyMethod::exact;
  std::vector<ChannelOutcome> channels;

  [[nodiscard]] std::vector<ChannelOutcome> violations() const {
    std::vector<ChannelOutcome> out;
    for (const auto& c : channels) {
      if (c.status == CaseStatus::violation) out.push_back(c);
    }
    return out;
  }
  [[nodiscard]] bool passed() const { return violations().empty(); }
  [[nodiscard]] int count(CaseStatus s) const {
    return static_cast<int>(std::count_if(channels.begin(), channels.end(), [s](const auto& c) { return c.status == s; }));
  }
};

[[nodiscard]] inline EnergyMethod preferred_method(const PotentialModel& V1, const PotentialModel& V2) {
  return has_exact_spectrum(V1) && has_exact_spectrum(V2) ? EnergyMethod::exact : EnergyMethod::oracle;
}

/// Energies of both potentials per channel and the ordering verdict. Throws
/// NotComparable when the sampled pointwise ordering fails.
[[nodiscard]] inline ComparisonReport verify_ordering(const PotentialModel& V1, const PotentialModel& V2,
                                                      const std::vector<Channel>& channels,
                                                      const EnergyEvaluator& evaluator, double tol = 1e-6) {
  ComparisonReport report;
  report.pointwise = pointwise_order(V1, V2);
  if (!report.pointwise.ordered) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "V1 > V2 by %.3g at r = %.3g", report.pointwise.max_excess, report.pointwise.r_at);
    throw NotComparable(msg);
  }
  report.method = preferred_method(V1, V2);
  for (const auto& ch : channels) {
    ChannelOutcome outcome;
    outcome.channel = ch;
    try {
      outcome.E1 = evaluator(V1, ch, report.method);
      outcome.E2 = evaluator(V2, ch, report.method);
      outcome.margin = *outcome.E2 - *outcome.E1;
      outcome.status = *outcome.E1 <= *outcome.E2 + tol ? CaseStatus::pass : CaseStatus::violation;
    } catch (const NoDiscreteSpectrum& e) {
      outcome.status = CaseStatus::skipped;
      outcome.note = e.what();
    } catch (const NoBoundState& e) {
      outcome.status = CaseStatus::skipped;
      outcome.note = e.what();
    }
    report.channels.push_back(std::move(outcome));
  }
  return report;
}

[[nodiscard]] inline ComparisonReport verify_ordering(const PotentialModel& V1, const PotentialModel& V2,
                                                      const std::vector<Channel>& channels, double tol = 1e-6) {
  return verify_ordering(V1, V2, channels, standard_evaluator(), tol);
}

struct FamilyScan {
  std::vector<double> a_grid;
  std::vector<double> energies;
  std::vector<double> slopes;  // forward differences of E(a)
  bool monotone = true;
};

/// E(a) along V1 + a (V2 - V1) on n_a uniform samples of [0, 1].
[[nodiscard]] inline FamilyScan family_scan(const PotentialModel& V1, const PotentialModel& V2, const Channel& ch,
                                            int n_a, const EnergyEvaluator& evaluator, double tol = 1e-8) {
  if (n_a < 2) throw DomainError("family_scan: need at least two samples");
  const auto order = pointwise_order(V1, V2);
  if (!order.ordered) throw NotComparable("family_scan: dV/da = V2 - V1 is negative somewhere");
  FamilyScan scan;
  for (int i = 0; i < n_a; ++i) {
    const double a = static_cast<double>(i) / (n_a - 1);
    const PotentialModel V = i == 0 ? V1 : i == n_a - 1 ? V2 : interpolate(V1, V2, a);
    const EnergyMethod method =
        i == 0 || i == n_a - 1 ? preferred_method(V1, V2)
                               : (has_exact_spectrum(V) && preferred_method(V1, V2) == EnergyMethod::exact
                                      ? EnergyMethod::exact
                                      : EnergyMethod::oracle);
    scan.a_grid.push_back(a);
    scan.energies.push_back(evaluator(V, ch, method));
  }
  for (int i = 0; i + 1 < n_a; ++i) {
    const double slope = (scan.energies[i + 1] - scan.energies[i]) / (scan.a_grid[i + 1] - scan.a_grid[i]);
    scan.slopes.push_back(slope);
    if (slope < -tol) scan.monotone = false;
  }
  return scan;
}

[[nodiscard]] inline FamilyScan family_scan(const PotentialModel& V1, const PotentialModel& V2, const Channel& ch,
                                            int n_a) {
  return family_scan(V1, V2, ch, n_a, standard_evaluator());
}

struct DerivativeSample {
  double a = 0.0;
  DerivativeIdentity identity;
  int dV_sign = 0;  // +1, -1, or 0 when dV/da vanishes on the samples
  bool sign_ok = false;
  bool identity_ok = false;
};

struct DerivativeCheck {
  std::vector<DerivativeSample> samples;

  [[nodiscard]] bool passed() const {
    return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.sign_ok && s.identity_ok; });
  }
};

/// Sign of dV/da over the pointwise sample radii, or 0 when it vanishes there; throws
/// NotApplicable when it takes both signs.
[[nodiscard]] inline int derivative_sign(const PotentialFamily& family, double a) {
  bool pos = false, neg = false;
  for (int i = 0; i < 1000; ++i) {
    const double r = 1e-4 * std::pow(1e7, i / 999.0);
    const double d = family.derivative(r, a);
    if (d > 1e-12) pos = true;
    if (d < -1e-12) neg = true;
  }
  if (pos && neg) throw NotApplicable("derivative_sign_check: dV/da changes sign");
  return pos ? 1 : neg ? -1 : 0;
}

/// At each a: finite-difference E'(a) against 2 (psi, dV/da psi), and the sign
/// of E'(a) against the sign of dV/da.
[[nodiscard]] inline DerivativeCheck derivative_sign_check(const PotentialFamily& family,
                                                           const std::vector<double>& a_samples, const Channel& ch,
                                                           const DiracOptions& opts = {}) {
  DerivativeCheck check;
  for (double a : a_samples) {
    DerivativeSample s;
    s.a = a;
    s.dV_sign = derivative_sign(family, a);
    s.identity = energy_derivative_identity(family, a, ch, opts);
    const double lhs = s.identity.lhs;
    s.sign_ok = s.dV_sign > 0 ? lhs >= -1e-8 : s.dV_sign < 0 ? lhs <= 1e-8 : std::abs(lhs) <= 1e-8;
    s.identity_ok = std::abs(lhs - s.identity.rhs) <= 1e-4 * std::max(1.0, std::abs(lhs));
    check.samples.push_back(s);
  }
  return check;
}

// ---------------------------------------------------------------------------
// Corpus of potential pairs.

struct CorpusCase {
  std::string name;
  PotentialModel V1;
  PotentialModel V2;
  std::vector<Channel> channels;
};

/// Channels d = 3, j in {1/2, 3/2}, nu in {0, 1, 2} for one mode and mass.
[[nodiscard]] inline std::vector<Channel> standard_channels(Symmetry mode = Symmetry::spin, double m = 1.0,
                                                            int nu_max = 2) {
  std::vector<Channel> out;
  for (int j2 : {1, 3}) {
    for (int nu = 0; nu <= nu_max; ++nu) out.push_back(Channel{3, j2, 1, mode, nu, m});
  }
  return out;
}

/// v * shape(r) + shift as a custom potential, e.g. ln r + 0.1.
[[nodiscard]] inline PotentialModel shifted_potential(const PotentialModel& base, double shift) {
  if (const auto* c = std::get_if<Coulomb>(&base)) return ShiftedCoulomb{c->v, shift};
  if (const auto* c = std::get_if<ShiftedCoulomb>(&base)) return ShiftedCoulomb{c->v, c->c + shift};
  if (const auto* k = std::get_if<Kratzer>(&base)) return Kratzer{k->a, k->v, k->c + shift};
  const double v = coupling(base);
  if (v == 0.0) throw DomainError("shifted_potential: base coupling is zero");
  auto base_copy = base;
  return Custom{[base_copy, shift, v](double r) { return (evaluate(base_copy, r) + shift) / v; }, v,
                family_name(base) + "+" + detail::fmt_number(shift)};
}

/// Built-in pointwise-ordered pairs across the Coulomb, log, oscillator and shift families.
[[nodiscard]] inline std::vector<CorpusCase> builtin_corpus() {
  const auto spin = standard_channels(Symmetry::spin);
  const auto pseudo = standard_channels(Symmetry::pseudo);
  return {
      {"coulomb-2-vs-1", Coulomb{2.0}, Coulomb{1.0}, spin},
      {"coulomb-1.5-vs-0.5", Coulomb{1.5}, Coulomb{0.5}, spin},
      {"coulomb-identical", Coulomb{1.0}, Coulomb{1.0}, spin},
      {"coulomb-pseudo-1-vs-2", Coulomb{-1.0}, Coulomb{-2.0}, pseudo},
      {"coulomb-vs-shifted", Coulomb{1.0}, ShiftedCoulomb{1.0, 0.2}, spin},
      {"shifted-down-vs-coulomb", ShiftedCoulomb{1.0, -0.2}, Coulomb{1.0}, spin},
      {"coulomb-vs-kratzer", Coulomb{1.0}, Kratzer{0.1, 1.0, 0.0}, spin},
      {"oscillator-0.5-vs-1", Oscillator{0.5}, Oscillator{1.0}, spin},
      {"oscillator-1-vs-2", Oscillator{1.0}, Oscillator{2.0}, spin},
      {"oscillator-pseudo-0.5-vs-1", Oscillator{0.5}, Oscillator{1.0}, pseudo},
      {"coulomb-vs-log", Coulomb{1.0}, Log{1.0}, spin},
      {"log-vs-oscillator", Log{1.0}, Oscillator{1.0}, spin},
      {"coulomb-vs-linear", Coulomb{1.0}, Linear{1.0}, spin},
      {"log-vs-log+0.1", Log{1.0}, shifted_potential(Log{1.0}, 0.1), spin},
      {"log-0.2-vs-log", shifted_potential(Log{1.0}, -0.2), Log{1.0}, spin},
  };
}

/// Parses "family:key=value,..." such as "coulomb:v=2", "kratzer:a=0.1,v=1,c=0"
/// or "log:v=1,shift=0.1".
[[nodiscard]] inline PotentialModel parse_potential(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  double v = 1.0, c = 0.0, a = 0.0, shift = 0.0;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("bad potential parameter '" + item + "' in '" + spec + "'");
      const std::string key = item.substr(0, eq);
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("bad number in '" + item + "'");
      }
      if (key == "v") v = value;
      else if (key == "c") c = value;
      else if (key == "a") a = value;
      else if (key == "shift") shift = value;
      else throw UsageError("unknown potential parameter '" + key + "'");
    }
  }
  PotentialModel V;
  if (family == "oscillator") V = Oscillator{v};
  else if (family == "linear") V = Linear{v};
  else if (family == "coulomb") V = Coulomb{v};
  else if (family == "shifted-coulomb") V = ShiftedCoulomb{v, c};
  else if (family == "kratzer") V = Kratzer{a, v, c};
  else if (family == "log") V = Log{v};
  else throw UsageError("unknown potential family '" + family + "'");
  return shift != 0.0 ? shifted_potential(V, shift) : V;
}

/// Corpus lines: "name V1spec V2spec [mode=spin|pseudo] [m=1] [nu_max=2]".
/// Blank lines and lines starting with '#' are ignored.
[[nodiscard]] inline std::vector<CorpusCase> parse_corpus(std::istream& in) {
  std::vector<CorpusCase> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::stringstream ss(line);
    std::string name, s1, s2, opt;
    if (!(ss >> name >> s1 >> s2)) throw UsageError("corpus line " + std::to_string(lineno) + ": expected name V1 V2");
    Symmetry mode = Symmetry::spin;
    double m = 1.0;
    int nu_max = 2;
    while (ss >> opt) {
      const auto eq = opt.find('=');
      const std::string key = opt.substr(0, eq);
      const std::string value = eq == std::string::npos ? "" : opt.substr(eq + 1);
      try {
        if (key == "mode") mode = parse_symmetry(value);
        else if (key == "m") m = std::stod(value);
        else if (key == "nu_max") nu_max = std::stoi(value);
        else throw UsageError("unknown option '" + key + "'");
      } catch (const UsageError&) {
        throw UsageError("corpus line " + std::to_string(lineno) + ": bad option '" + opt + "'");
      } catch (const std::exception&) {
        throw UsageError("corpus line " + std::to_string(lineno) + ": bad value in '" + opt + "'");
      }
    }
    if (nu_max < 0) throw UsageError("corpus line " + std::to_string(lineno) + ": nu_max must be >= 0");
    try {
      out.push_back({name, parse_potential(s1), parse_potential(s2), standard_channels(mode, m, nu_max)});
    } catch (const UsageError& e) {
      throw UsageError("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace dirac_bounds
