#pragma once

// Closed-form and implicit Dirac energies for the analytic potentials. Each
// solver works through the combined eigenequation: a known Schrodinger
// eigenvalue F_{nu L} is equated with E^2 - mu^2 at effective coupling
// 2(E + mu) v.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dirac_bounds/channel.hpp"
#include "dirac_bounds/errors.hpp"
#include "dirac_bounds/potential.hpp"
#include "dirac_bounds/radial_solver.hpp"
#include "dirac_bounds/roots.hpp"

namespace dirac_bounds {

struct EigenvalueSolution {
  double E = 0.0;
  double residual = 0.0;  // |defining equation| at E
  int nodes = 0;
  Bracket bracket;
  std::string branch_note;
};

/// Open energy interval; lo may be -inf and hi may be +inf.
struct SpectralRegion {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool contains(double E) const { return E > lo && E < hi; }
};

namespace detail {

inline constexpr RootOptions kEnergyRoot{1e-14, 0.0, 200};

/// Root of g on the half-line beyond `edge` in direction `dir`, with g(edge) < 0
/// and g increasing away from the edge.
template <class G>
RootResult solve_beyond(G&& g, double edge, double dir) {
  double step = 1.0;
  double far = edge + dir * step;
  for (int k = 0; k < 200 && g(far) <= 0.0; ++k) {
    step *= 2.0;
    far = edge + dir * step;
  }
  if (!(g(far) > 0.0)) throw NumericalFailure("no sign change found on the admissible half-line");
  return solve_bracketed(g, edge, far, kEnergyRoot);
}

}  // namespace detail

/// Oscillator V = v r^2: E^2 - mu^2 = P sqrt(2 v (mu + E)), P = 4 nu + 2L + 3,
/// equivalently (E^2 - m^2)|E - mu| = 2 P^2 |v| with |E| > m and v(E + mu) > 0.
/// On that half-line the left side is strictly monotone, so the admissible
/// root is unique and continuous in v, tending to sign(v) m as v -> 0.
[[nodiscard]] inline EigenvalueSolution oscillator_energy(double v, const Channel& ch) {
  const auto p = derive(ch);
  if (v == 0.0) throw NoDiscreteSpectrum("oscillator: coupling v = 0 has no discrete spectrum");
  const double P = principal_quantum(ch.nu, p.L, SpectrumFamily::oscillator);
  const double m = ch.m;
  const double mu = p.mu;
  const double dir = v > 0.0 ? 1.0 : -1.0;
  const double rhs = 2.0 * P * P * std::abs(v);
  auto g = [&](double E) { return (E * E - m * m) * std::abs(E - mu) - rhs; };
  // Orient so g grows away from the edge E = dir * m.
  const auto root = detail::solve_beyond([&](double E) { return g(E); }, dir * m, dir);
  EigenvalueSolution s;
  s.E = root.x;
  s.residual = std::abs(g(s.E));
  s.nodes = ch.nu;
  s.bracket = root.bracket;
  s.branch_note = v > 0.0 ? "unique root with E > m" : "unique root with E < -m";
  return s;
}

/// Linear V = v r: E^2 - mu^2 = P (2 v (mu + E))^{2/3}, i.e.
/// (E^2 - m^2)(E - mu)^2 = 4 v^2 P^3 with |E| > m and v(E + mu) > 0.
[[nodiscard]] inline EigenvalueSolution linear_energy(double v, const Channel& ch, double P) {
  const auto p = derive(ch);
  if (v == 0.0) throw NoDiscreteSpectrum("linear: coupling v = 0 has no discrete spectrum");
  if (!(P > 0.0)) throw DomainError("linear: P must be positive");
  const double m = ch.m;
  const double mu = p.mu;
  const double dir = v > 0.0 ? 1.0 : -1.0;
  const double rhs = 4.0 * v * v * P * P * P;
  auto g = [&](double E) { return (E * E - m * m) * (E - mu) * (E - mu) - rhs; };
  const auto root = detail::solve_beyond(g, dir * m, dir);
  EigenvalueSolution s;
  s.E = root.x;
  s.residual = std::abs(g(s.E));
  s.nodes = ch.nu;
  s.bracket = root.bracket;
  s.branch_note = v > 0.0 ? "unique root with E > m" : "unique root with E < -m";
  return s;
}

/// Coulomb V = -v/r: E = mu (1 - v^2/P^2) / (1 + v^2/P^2), P = nu + 1 + L; needs v mu > 0.
[[nodiscard]] inline EigenvalueSolution coulomb_energy(double v, const Channel& ch) {
  const auto p = derive(ch);
  if (!(v * p.mu > 0.0)) throw NoDiscreteSpectrum("coulomb: discrete states require v mu > 0");
  const double P = principal_quantum(ch.nu, p.L, SpectrumFamily::coulomb_like);
  const double x = v * v / (P * P);
  EigenvalueSolution s;
  s.E = p.mu * (1.0 - x) / (1.0 + x);
  s.residual = std::abs(s.E * s.E - p.mu * p.mu + x * (p.mu + s.E) * (p.mu + s.E));
  s.nodes = ch.nu;
  s.bracket = {s.E, s.E};
  s.branch_note = "closed form";
  return s;
}

/// Shifted Coulomb V = -v/r + c: E = -mu + 2(mu + c) / (1 + v^2/P^2); needs v(c + mu) > 0.
[[nodiscard]] inline EigenvalueSolution shifted_coulomb_energy(double v, double c, const Channel& ch) {
  const auto p = derive(ch);
  if (!(v * (c + p.mu) > 0.0)) throw NoDiscreteSpectrum("shifted coulomb: discrete states require v(c + mu) > 0");
  const double P = principal_quantum(ch.nu, p.L, SpectrumFamily::coulomb_like);
  const double x = v * v / (P * P);
  EigenvalueSolution s;
  s.E = -p.mu + 2.0 * (p.mu + c) / (1.0 + x);
  const double w = p.mu + s.E;
  s.residual = std::abs(s.E * s.E - p.mu * p.mu - 2.0 * c * w + x * w * w);
  s.nodes = ch.nu;
  s.bracket = {s.E, s.E};
  s.branch_note = "closed form";
  return s;
}

namespace detail {

struct KratzerTerms {
  double mu, kappa, nu, a, v, c;

  /// sqrt((kappa + 1/2)^2 + 2a(mu + E)), i.e. L_eff + 1/2.
  [[nodiscard]] double half_shifted_L(double E) const {
    const double k = kappa + 0.5;
    return std::sqrt(k * k + 2.0 * a * (mu + E));
  }
  [[nodiscard]] double discriminant(double E) const { return 2.0 * c * (mu + E) + mu * mu - E * E; }
  /// v(mu + E) - (nu + 1/2 + sqrt(...)) sqrt(2c(mu + E) + mu^2 - E^2)
  [[nodiscard]] double residual(double E) const {
    return v * (mu + E) - (nu + 0.5 + half_shifted_L(E)) * std::sqrt(discriminant(E));
  }
};

}  // namespace detail

/// Admissible Kratzer energies from the quartic obtained by equating the
/// shifted-Coulomb formula with the E-dependent P to
/// E = [(P - 1/2 - nu)^2 - (kappa + 1/2)^2] / (2a) - mu.
/// With y = P - nu - 1/2 the condition is (y^2 - k^2)(P^2 + v^2) = 4a(mu + c) P^2.
[[nodiscard]] inline std::vector<double> kratzer_quartic_energies(double a, double v, double c, const Channel& ch) {
  const auto p = derive(ch);
  const double k = p.kappa + 0.5;
  const double n0 = ch.nu + 0.5;
  const double mu = p.mu;
  // P = y + n0. Coefficients of (y^2 - k^2)((y + n0)^2 + v^2) - 4a(mu + c)(y + n0)^2 in powers of y.
  const double A = n0 * n0 + v * v;
  const double g = 4.0 * a * (mu + c);
  std::vector<double> coeff{
      -k * k * A - g * n0 * n0,   // y^0
      -2.0 * k * k * n0 - 2.0 * g * n0,  // y^1
      A - k * k - g,              // y^2
      2.0 * n0,                   // y^3
      1.0,                        // y^4
  };
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -coeff[static_cast<std::size_t>(i)];
  const Eigen::EigenSolver<Eigen::Matrix4d> eig(companion, false);

  auto poly = [&](double y) { return (((coeff[4] * y + coeff[3]) * y + coeff[2]) * y + coeff[1]) * y + coeff[0]; };
  auto dpoly = [&](double y) { return ((4.0 * coeff[4] * y + 3.0 * coeff[3]) * y + 2.0 * coeff[2]) * y + coeff[1]; };

  std::vector<double> energies;
  for (int i = 0; i < 4; ++i) {
    const std::complex<double> root = eig.eigenvalues()[i];
    if (std::abs(root.imag()) > 1e-7 * (1.0 + std::abs(root.real()))) continue;
    double y = root.real();
    for (int it = 0; it < 8; ++it) {
      const double d = dpoly(y);
      if (d == 0.0) break;
      y -= poly(y) / d;
    }
    if (y < 0.0) continue;
    const double P = y + n0;
    const double E = -mu + 2.0 * (mu + c) * P * P / (P * P + v * v);
    const double w = mu + E;
    const double disc = 2.0 * c * w + mu * mu - E * E;
    if (!(v * w > 0.0) || !(disc > 0.0)) continue;
    // With a = 0 the quartic also admits y = |k| regardless of E; keep only consistent roots.
    if (std::abs(y * y - (k * k + 2.0 * a * w)) > 1e-8 * (1.0 + y * y)) continue;
    energies.push_back(E);
  }
  std::sort(energies.begin(), energies.end());
  energies.erase(std::unique(energies.begin(), energies.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-12 * (1.0 + std::abs(x)); }),
                 energies.end());
  return energies;
}

/// Kratzer V = a/r^2 - v/r + c. Root of
///   v(mu + E) = (nu + 1/2 + sqrt((kappa + 1/2)^2 + 2a(mu + E))) sqrt(2c(mu + E) + mu^2 - E^2)
/// found by a 1024-point scan plus bracketed refinement inside the region where
/// both square roots are real and v(mu + E) > 0, then confirmed against the quartic route.
[[nodiscard]] inline EigenvalueSolution kratzer_energy(double a, double v, double c, const Channel& ch) {
  const auto p = derive(ch);
  const double mu = p.mu;
  if (v == 0.0 && c == 0.0) throw NoDiscreteSpectrum("kratzer: no discrete spectrum without Coulomb coupling");
  if (!(v * (c + mu) > 0.0)) throw NoDiscreteSpectrum("kratzer: discrete states require v(c + mu) > 0");
  const detail::KratzerTerms terms{mu, p.kappa, static_cast<double>(ch.nu), a, v, c};

  // v > 0: E in (-mu, mu + 2c); v < 0: E in (mu + 2c, -mu).
  double lo = v > 0.0 ? -mu : mu + 2.0 * c;
  double hi = v > 0.0 ? mu + 2.0 * c : -mu;
  // Real sqrt((kappa + 1/2)^2 + 2a(mu + E)).
  if (a != 0.0) {
    const double k = p.kappa + 0.5;
    const double edge = -mu - k * k / (2.0 * a);
    if (a > 0.0) lo = std::max(lo, edge);
    else hi = std::min(hi, edge);
  }
  if (!(hi > lo)) throw NoDiscreteSpectrum("kratzer: empty admissible energy region");
  const double pad = 1e-13 * (1.0 + std::abs(lo) + std::abs(hi));
  const double scan_lo = lo + pad;
  const double scan_hi = hi - pad;
  auto f = [&](double E) { return terms.residual(E); };
  const auto changes = scan_sign_changes(f, scan_lo, scan_hi, 1024);
  if (changes.empty()) throw NoDiscreteSpectrum("kratzer: no root in the admissible region");
  if (changes.size() > 1) throw NumericalFailure("kratzer: multiple roots in the admissible region");
  const auto root = solve_bracketed(f, changes.front().lo, changes.front().hi, detail::kEnergyRoot);

  EigenvalueSolution s;
  s.E = root.x;
  s.residual = std::abs(terms.residual(s.E));
  s.nodes = ch.nu;
  s.bracket = root.bracket;

  const auto quartic = kratzer_quartic_energies(a, v, c, ch);
  double best = std::numeric_limits<double>::infinity();
  for (double e : quartic) best = std::min(best, std::abs(e - s.E));
  if (!(best <= 1e-8 * (1.0 + std::abs(s.E)))) {
    throw NumericalFailure("kratzer: bracketed root disagrees with the quartic route");
  }
  char note[96];
  std::snprintf(note, sizeof note, "quartic route agrees to %.1e", best);
  s.branch_note = note;
  return s;
}

/// Critical product u1 = v(mu + E) at E = 0 for V = v ln r:
///   -m^2 = u1 (2 e - ln 2) - u1 ln u1,  u1 >= exp(2e - ln 2).
[[nodiscard]] inline double log_u1(double m, double e_nuL) {
  const double C = 2.0 * e_nuL - std::log(2.0);
  const double start = std::exp(C);
  if (m == 0.0) return start;
  auto k = [&](double u) { return u * (C - std::log(u)) + m * m; };
  double hi = 2.0 * start;
  for (int i = 0; i < 200 && k(hi) > 0.0; ++i) hi *= 2.0;
  if (!(k(hi) <= 0.0)) throw NumericalFailure("log_u1: could not bracket the critical coupling");
  return solve_bracketed(k, start, hi, RootOptions{1e-13 * start, 0.0, 200}).x;
}

[[nodiscard]] inline double log_u1(const Channel& ch, double e_nuL) { return log_u1(ch.m, e_nuL); }

/// Energy interval that holds the log-potential spectrum for a given sign
/// of v and mu; E = -mu + u/v with 0 < u < u1.
[[nodiscard]] inline SpectralRegion log_spectral_region(double v, double mu, double u1) {
  if (v == 0.0) throw DomainError("log_spectral_region: v must be non-zero");
  if (!(u1 > 0.0)) throw DomainError("log_spectral_region: u1 must be positive");
  if (v > 0.0) return {-mu, -mu + u1 / v};
  return {-mu - u1 / std::abs(v), -mu};
}

[[nodiscard]] inline SpectralRegion log_spectral_region(double v, const Channel& ch, double u1) {
  return log_spectral_region(v, derive(ch).mu, u1);
}

/// Log V = v ln r: E = mu + v [2 e1 - ln 2 - ln(v(mu + E))], solved for u = v(mu + E) on (0, u1].
[[nodiscard]] inline EigenvalueSolution log_energy(double v, const Channel& ch, double e1) {
  const auto p = derive(ch);
  const double mu = p.mu;
  if (v == 0.0) throw NoDiscreteSpectrum("log: coupling v = 0 has no discrete spectrum");
  const double C = 2.0 * e1 - std::log(2.0);
  const double u1 = log_u1(ch.m, e1);
  // E(u) = u/v - mu; residual of the implicit formula as a function of u.
  auto R = [&](double u) { return u / v - 2.0 * mu - v * C + v * std::log(u); };
  const double scale = std::abs(v) + std::abs(mu) + u1 / std::abs(v);

  double u = 0.0;
  Bracket ub{};
  const double r_top = R(u1);
  if (std::abs(r_top) <= 1e-13 * scale) {
    u = u1;
    ub = {u1, u1};
  } else {
    const double u_lo = 1e-12 * u1;
    // Monotone in u; a sampled check guards the uniqueness assumption.
    const auto changes = scan_sign_changes(R, u_lo, u1, 1024);
    if (changes.empty()) throw NoDiscreteSpectrum("log: no root of the implicit formula for 0 < u < u1");
    if (changes.size() > 1) throw NumericalFailure("log: implicit formula changes sign more than once");
    const auto root = solve_bracketed(R, changes.front().lo, changes.front().hi, RootOptions{1e-15 * u1, 0.0, 200});
    u = root.x;
    ub = root.bracket;
  }
  EigenvalueSolution s;
  s.E = u / v - mu;
  s.residual = std::abs(s.E - mu - v * (C - std::log(v * (mu + s.E))));
  s.nodes = ch.nu;
  s.bracket = {std::min(ub.lo / v, ub.hi / v) - mu, std::max(ub.lo / v, ub.hi / v) - mu};
  s.branch_note = u == u1 ? "root at the u = u1 edge (E = 0)" : "unique root with 0 < u < u1";
  return s;
}

/// Generalised Laguerre polynomial L_n^alpha(x) by upward three-term recurrence.
[[nodiscard]] inline double laguerre(int n, double alpha, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Unnormalised Coulomb radial factor r^{L+1} exp(-beta r) L_nu^{2L+1}(2 beta r) and its r-derivative.
struct CoulombProfile {
  double L;
  int nu;
  double beta;

  [[nodiscard]] double value(double r) const {
    return std::pow(r, L + 1.0) * std::exp(-beta * r) * laguerre(nu, 2.0 * L + 1.0, 2.0 * beta * r);
  }
  [[nodiscard]] double derivative(double r) const {
    const double x = 2.0 * beta * r;
    const double lag = laguerre(nu, 2.0 * L + 1.0, x);
    const double dlag = -laguerre(nu - 1, 2.0 * L + 2.0, x) * 2.0 * beta;
    const double pre = std::pow(r, L + 1.0) * std::exp(-beta * r);
    return pre * (((L + 1.0) / r - beta) * lag + dlag);
  }
};

namespace detail {

/// Squared norms of the large (profile) and small (derived) components of an
/// unnormalised Coulomb state, by Simpson in ln r.
inline std::pair<double, double> coulomb_component_norms(const CoulombProfile& prof, double k_d, double denom,
                                                         bool spin) {
  const double r_lo = 1e-8;
  const double r_hi = (80.0 + 4.0 * prof.nu + 2.0 * prof.L) / prof.beta;
  const std::size_t n = 40001;
  const double h = std::log(r_hi / r_lo) / static_cast<double>(n - 1);
  std::vector<double> big(n), small(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = r_lo * std::exp(static_cast<double>(i) * h);
    const double f = prof.value(r);
    const double df = prof.derivative(r);
    const double g = spin ? (df + k_d * f / r) / denom : (df - k_d * f / r) / denom;
    big[i] = f * f * r;
    small[i] = g * g * r;
  }
  return {simpson(big, h), simpson(small, h)};
}

}  // namespace detail

/// Coulomb eigenfunction psi(r) = c r^{L+1} exp(-beta r) L_nu^{2L+1}(2 beta r),
/// beta = sqrt(mu^2 - E^2), with c fixed so that the two reconstructed Dirac
/// components together carry unit norm.
[[nodiscard]] inline double coulomb_wavefunction(double v, const Channel& ch, double E, double r) {
  const auto p = derive(ch);
  if (!(p.mu * p.mu > E * E)) throw DomainError("coulomb_wavefunction: requires mu^2 > E^2");
  if (!(r > 0.0)) throw DomainError("coulomb_wavefunction: r must be positive");
  if (!(v * p.mu > 0.0)) throw DomainError("coulomb_wavefunction: requires v mu > 0");
  const CoulombProfile prof{p.L, ch.nu, std::sqrt(p.mu * p.mu - E * E)};
  const bool spin = ch.mode == Symmetry::spin;
  const double denom = spin ? ch.m + E : ch.m - E;
  if (denom == 0.0) throw DegenerateEnergy("coulomb_wavefunction: m +/- E vanishes");
  const auto [big, small] = detail::coulomb_component_norms(prof, p.k_d, denom, spin);
  return prof.value(r) / std::sqrt(big + small);
}

/// Schrodinger constants F_{nu L}(1) for the linear and log shapes, computed
/// on demand and cached.
class SpectralConstants {
 public:
  explicit SpectralConstants(RadialOptions opts = {}) : opts_(std::move(opts)) {}
  // Moving is not synchronised; move only before sharing.
  SpectralConstants(SpectralConstants&& other) noexcept
      : opts_(std::move(other.opts_)), linear_(std::move(other.linear_)), log_(std::move(other.log_)) {}

  /// Substitutes the printed values P = 3.3612545 (linear) and
  /// e(1) = 1.6411353 (log) for L = 1, nu = 0; other channels are computed.
  [[nodiscard]] static SpectralConstants published(RadialOptions opts = {}) {
    return SpectralConstants(std::move(opts), Table{{{1.0, 0}, 3.3612545}}, Table{{{1.0, 0}, 1.6411353}});
  }

  double linear_P(double L, int nu) { return lookup(linear_, L, nu, [&] { return dirac_bounds::linear_P(L, nu, opts_); }); }
  double log_e1(double L, int nu) { return lookup(log_, L, nu, [&] { return dirac_bounds::log_e1(L, nu, opts_); }); }

 private:
  using Table = std::map<std::pair<double, int>, double>;

  SpectralConstants(RadialOptions opts, Table linear, Table log)
      : opts_(std::move(opts)), linear_(std::move(linear)), log_(std::move(log)) {}

  template <class Compute>
  double lookup(Table& table, double L, int nu, Compute&& compute) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(L, nu);
    if (auto it = table.find(key); it != table.end()) return it->second;
    const double value = compute();
    table.emplace(key, value);
    return value;
  }

  RadialOptions opts_;
  Table linear_;
  Table log_;
  std::mutex mutex_;
};

/// Exact (closed-form or implicit) energy for any analytic model.
[[nodiscard]] inline EigenvalueSolution exact_energy(const PotentialModel& V, const Channel& ch,
                                                     SpectralConstants& constants) {
  return std::visit(
      [&](const auto& p) -> EigenvalueSolution {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Oscillator>) {
          return oscillator_energy(p.v, ch);
        } else if constexpr (std::is_same_v<T, Linear>) {
          return linear_energy(p.v, ch, constants.linear_P(derive(ch).L, ch.nu));
        } else if constexpr (std::is_same_v<T, Coulomb>) {
          return coulomb_energy(p.v, ch);
        } else if constexpr (std::is_same_v<T, ShiftedCoulomb>) {
          return shifted_coulomb_energy(p.v, p.c, ch);
        } else if constexpr (std::is_same_v<T, Kratzer>) {
          return kratzer_energy(p.a, p.v, p.c, ch);
        } else if constexpr (std::is_same_v<T, Log>) {
          return log_energy(p.v, ch, constants.log_e1(derive(ch).L, ch.nu));
        } else {
          throw NotApplicable("no exact spectrum for custom potential '" + p.name + "'");
        }
      },
      V);
}

[[nodiscard]] inline bool has_exact_spectrum(const PotentialModel& V) { return !std::holds_alternative<Custom>(V); }

}  // namespace dirac_bounds
