#pragma once

// Numerical oracle for the combined radial eigenequation
//
//   -psi'' + (kappa(kappa+1)/r^2 + 2(E + mu) V) psi = (E^2 - mu^2) psi,
//
// valid for any potential. For fixed E this is a Schrodinger problem with
// eigenvalue F(E); the Dirac energy is a root of G(E) = F(E) - (E^2 - mu^2).
// A 1/r^2 part of V is folded into the centrifugal term.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dirac_bounds/channel.hpp"
#include "dirac_bounds/errors.hpp"
#include "dirac_bounds/exact_spectra.hpp"
#include "dirac_bounds/potential.hpp"
#include "dirac_bounds/radial_solver.hpp"
#include "dirac_bounds/roots.hpp"

namespace dirac_bounds {

struct DiracOptions {
  RadialOptions radial{.tol = 1e-12};
  double tol = 1e-10;             // on E
  std::optional<Bracket> search;  // overrides the built-in ladder
};

struct DiracSolution {
  double E = 0.0;
  RadialGrid grid;
  std::vector<double> psi1;
  std::vector<double> psi2;
  double norm_defect = 0.0;
  double residual1 = 0.0;  // max |r * defect| of the first first-order equation / max component
  double residual2 = 0.0;
  int nodes = 0;  // of the combined-equation eigenfunction
};

namespace detail {

/// The Schrodinger problem obtained from the combined equation at fixed E.
class CombinedEquation {
 public:
  CombinedEquation(PotentialModel V, const Channel& ch, RadialOptions radial)
      : V_(std::move(V)), params_(derive(ch)), nu_(ch.nu), radial_(std::move(radial)) {}

  [[nodiscard]] const ChannelParams& params() const { return params_; }

  [[nodiscard]] RadialProblem problem(double E) const {
    const double w = 2.0 * (E + params_.mu);
    const double a = inverse_square_coefficient(V_);
    return {[V = V_, w](double r) { return w * regular_part(V, r); }, params_.centrifugal() + w * a, nu_};
  }

  /// Bound state of the fixed-E problem, or nullopt when none is found.
  [[nodiscard]] std::optional<ShootingResult> solve(double E) const {
    const auto pb = problem(E);
    if (!(pb.centrifugal > -0.25)) return std::nullopt;
    try {
      auto out = schrodinger_eigenvalue(pb, radial_);
      return out;
    } catch (const NoBoundState&) {
      return std::nullopt;
    } catch (const DomainError&) {
      return std::nullopt;
    } catch (const NumericalFailure&) {
      // e.g. a tail that outruns r_max_limit as the coupling vanishes
      return std::nullopt;
    }
  }

  [[nodiscard]] std::optional<double> G(double E) const {
    const auto s = solve(E);
    if (!s) return std::nullopt;
    return s->eigenvalue - (E * E - params_.mu * params_.mu);
  }

 private:
  PotentialModel V_;
  ChannelParams params_;
  int nu_;
  RadialOptions radial_;
};

/// Starting point and direction of the outward energy ladder: the v -> 0
/// limit of the admissible branch, walking into the admissible region.
struct LadderPlan {
  double start;
  double end;
  double scale;
};

inline LadderPlan ladder_plan(const PotentialModel& V, const Channel& ch, const RadialOptions& radial) {
  const auto p = derive(ch);
  const double mu = p.mu;
  const double m = ch.m;
  const double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& q) -> LadderPlan {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Oscillator> || std::is_same_v<T, Linear>) {
          if (q.v == 0.0) throw NoDiscreteSpectrum(family_name(V) + ": coupling v = 0 has no discrete spectrum");
          return q.v > 0.0 ? LadderPlan{m, inf, 1.0 + m} : LadderPlan{-m, -inf, 1.0 + m};
        } else if constexpr (std::is_same_v<T, Coulomb>) {
          if (!(q.v * mu > 0.0)) throw NoDiscreteSpectrum("coulomb: discrete states require v mu > 0");
          return {mu, -mu, std::abs(mu)};
        } else if constexpr (std::is_same_v<T, ShiftedCoulomb> || std::is_same_v<T, Kratzer>) {
          if (!(q.v * (q.c + mu) > 0.0)) {
            throw NoDiscreteSpectrum(family_name(V) + ": discrete states require v(c + mu) > 0");
          }
          return {mu + 2.0 * q.c, -mu, std::abs(mu + q.c)};
        } else if constexpr (std::is_same_v<T, Log>) {
          if (q.v == 0.0) throw NoDiscreteSpectrum("log: coupling v = 0 has no discrete spectrum");
          const double u1 = log_u1(m, log_e1(p.L, ch.nu, radial));
          const auto region = log_spectral_region(q.v, mu, u1);
          return q.v > 0.0 ? LadderPlan{region.hi, region.lo, region.hi - region.lo}
                           : LadderPlan{region.lo, region.hi, region.hi - region.lo};
        } else {
          // From E = -mu, where the effective coupling vanishes, outward.
          if (q.v == 0.0) throw NoDiscreteSpectrum(q.name + ": coupling v = 0 has no discrete spectrum");
          return {-mu, q.v > 0.0 ? inf : -inf, 1.0 + m};
        }
      },
      V);
}

/// Fourth-order first derivative of samples uniform in x; one-sided at the ends.
inline std::vector<double> derivative_x(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 5) return d;
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
  d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * h);
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
  return d;
}

/// d/dr of samples on a log grid.
inline std::vector<double> derivative_r(std::span<const double> f, const std::vector<double>& r, double h) {
  auto d = derivative_x(f, h);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] /= r[i];
  return d;
}

/// integral of f(r) dr for samples on a log grid.
inline double integrate_dr(std::span<const double> f, const std::vector<double>& r, double h) {
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] * r[i];
  return simpson(g, h);
}

}  // namespace detail

/// Dirac energy from the combined equation, located on an energy ladder and
/// refined by bracketed root-finding on G(E).
[[nodiscard]] inline EigenvalueSolution dirac_energy(const PotentialModel& V, const Channel& ch,
                                                     const DiracOptions& opts = {}) {
  validate(ch);
  if (ch.d == 1) throw NotApplicable("dirac_energy: d = 1 needs the full line; only the half-line problem is solved");
  RadialOptions radial = opts.radial;
  radial.tol = std::min(radial.tol, 0.01 * opts.tol);
  const detail::CombinedEquation eq(V, ch, radial);

  std::optional<LadderBracket> found;
  if (opts.search) {
    const Bracket s = *opts.search;
    if (!(s.hi > s.lo)) throw DomainError("dirac_energy: empty search interval");
    found = ladder_bracket([&](double E) { return eq.G(E); }, s.lo, s.hi, 1e-7 * (s.hi - s.lo), 80);
  } else {
    const auto plan = detail::ladder_plan(V, ch, radial);
    found = ladder_bracket([&](double E) { return eq.G(E); }, plan.start, plan.end, 1e-8 * std::max(plan.scale, 1e-3),
                           120);
  }
  if (!found) throw NoDiscreteSpectrum("dirac_energy: G(E) has no sign change on the search interval");

  auto g_strict = [&](double E) {
    const auto g = eq.G(E);
    if (!g) throw NumericalFailure("dirac_energy: inner radial solve failed inside the bracket");
    return *g;
  };
  RootResult root;
  if (found->fa == 0.0) {
    root = {found->a, 0.0, 0, {found->a, found->a}};
  } else {
    root = solve_bracketed(g_strict, found->a, found->b, found->fa, found->fb, RootOptions{0.1 * opts.tol, 0.0, 200});
  }
  const auto final_state = eq.solve(root.x);
  if (!final_state) throw NumericalFailure("dirac_energy: no bound state at the converged energy");
  if (final_state->nodes != ch.nu) throw NumericalFailure("dirac_energy: node count drifted from nu");

  EigenvalueSolution s;
  s.E = root.x;
  s.residual = std::abs(final_state->eigenvalue - (s.E * s.E - eq.params().mu * eq.params().mu));
  s.nodes = final_state->nodes;
  s.bracket = root.bracket;
  s.branch_note = "oracle: G(E) = F(E) - (E^2 - mu^2)";
  return s;
}

/// Fixed-grid form: the inner solver uses exactly `grid`.
[[nodiscard]] inline EigenvalueSolution dirac_energy(const PotentialModel& V, const Channel& ch, const RadialGrid& grid,
                                                     double tol, std::optional<Bracket> search = std::nullopt) {
  validate(grid);
  DiracOptions opts;
  opts.radial.r_min = grid.r_min;
  opts.radial.r_max = grid.r_max;
  opts.radial.max_step = grid.step() * (1.0 + 1e-12);
  opts.tol = tol;
  opts.search = search;
  return dirac_energy(V, ch, opts);
}

/// Both radial components from the combined-equation eigenfunction psi (on
/// `grid`), rescaled to unit total norm, with first-order system defects.
[[nodiscard]] inline DiracSolution reconstruct_components(std::span<const double> psi, const RadialGrid& grid, double E,
                                                          const Channel& ch, const PotentialModel& V) {
  if (psi.size() != grid.n) throw DomainError("reconstruct_components: psi does not match the grid");
  const auto p = derive(ch);
  const double m = ch.m;
  const double k = p.k_d;
  const bool spin = ch.mode == Symmetry::spin;
  const double denom = spin ? m + E : m - E;
  if (std::abs(denom) <= 1e-12 * (1.0 + std::abs(m))) {
    throw DegenerateEnergy(spin ? "reconstruct_components: m + E vanishes" : "reconstruct_components: m - E vanishes");
  }
  const auto r = grid.radii();
  const double h = grid.step();
  const std::size_t n = grid.n;

  DiracSolution out;
  out.E = E;
  out.grid = grid;
  out.nodes = node_count(psi);
  std::vector<double> main(psi.begin(), psi.end());
  const auto dmain = detail::derivative_r(main, r, h);
  std::vector<double> other(n);
  for (std::size_t i = 0; i < n; ++i) {
    other[i] = spin ? (dmain[i] + k * main[i] / r[i]) / denom : (dmain[i] - k * main[i] / r[i]) / denom;
  }
  out.psi1 = spin ? std::move(main) : std::move(other);
  out.psi2 = spin ? std::move(other) : std::move(main);

  std::vector<double> density(n);
  for (std::size_t i = 0; i < n; ++i) density[i] = out.psi1[i] * out.psi1[i] + out.psi2[i] * out.psi2[i];
  const double norm = detail::integrate_dr(density, r, h);
  if (!(norm > 0.0)) throw NumericalFailure("reconstruct_components: zero norm");
  const double scale = 1.0 / std::sqrt(norm);
  for (std::size_t i = 0; i < n; ++i) {
    out.psi1[i] *= scale;
    out.psi2[i] *= scale;
    density[i] *= scale * scale;
  }
  out.norm_defect = std::abs(detail::integrate_dr(density, r, h) - 1.0);

  // E psi1 = (m + V + S) psi1 + (-d/dr + k/r) psi2,  E psi2 = (d/dr + k/r) psi1 + (-m + V - S) psi2
  // with S = V (spin) or S = -V (pseudo-spin). Defects are taken in the ln r
  // form (both sides times r): near r_min the plain form divides the
  // round-off of nested differences by r^2.
  const auto d1 = detail::derivative_r(out.psi1, r, h);
  const auto d2 = detail::derivative_r(out.psi2, r, h);
  double amp = 0.0;
  for (std::size_t i = 0; i < n; ++i) amp = std::max({amp, std::abs(out.psi1[i]), std::abs(out.psi2[i])});
  double res1 = 0.0, res2 = 0.0;
  for (std::size_t i = 4; i + 4 < n; ++i) {
    const double Vr = evaluate(V, r[i]);
    const double upper_pot = spin ? m + 2.0 * Vr : m;
    const double lower_pot = spin ? -m : -m + 2.0 * Vr;
    const double e1 = E * out.psi1[i] - upper_pot * out.psi1[i] - (-d2[i] + k * out.psi2[i] / r[i]);
    const double e2 = E * out.psi2[i] - (d1[i] + k * out.psi1[i] / r[i]) - lower_pot * out.psi2[i];
    res1 = std::max(res1, std::abs(e1) * r[i]);
    res2 = std::max(res2, std::abs(e2) * r[i]);
  }
  out.residual1 = res1 / amp;
  out.residual2 = res2 / amp;
  return out;
}

/// Energy plus reconstructed components.
[[nodiscard]] inline DiracSolution dirac_state(const PotentialModel& V, const Channel& ch,
                                               const DiracOptions& opts = {}) {
  const auto e = dirac_energy(V, ch, opts);
  RadialOptions radial = opts.radial;
  radial.tol = std::min(radial.tol, 0.01 * opts.tol);
  const detail::CombinedEquation eq(V, ch, radial);
  const auto state = eq.solve(e.E);
  if (!state) throw NumericalFailure("dirac_state: no bound state at the converged energy");
  return reconstruct_components(state->psi, state->grid, e.E, ch, V);
}

/// One-parameter potential family V(r, a). d_da may be left empty, in which
/// case dV/da is taken by centred differences.
struct PotentialFamily {
  std::function<PotentialModel(double)> at;
  std::function<double(double r, double a)> d_da;
  std::optional<Bracket> search;  // forwarded to dirac_energy

  [[nodiscard]] double derivative(double r, double a) const {
    if (d_da) return d_da(r, a);
    const double d = 1e-5 * std::max(1.0, std::abs(a));
    return (evaluate(at(a + d), r) - evaluate(at(a - d), r)) / (2.0 * d);
  }
};

/// Linear family V1 + a (V2 - V1).
[[nodiscard]] inline PotentialFamily interpolation_family(const PotentialModel& V1, const PotentialModel& V2) {
  return {[V1, V2](double a) { return interpolate(V1, V2, a); },
          [V1, V2](double r, double) { return evaluate(V2, r) - evaluate(V1, r); }, std::nullopt};
}

struct DerivativeIdentity {
  double lhs = 0.0;          // [E(a + d) - E(a - d)] / (2 d)
  double lhs_half = 0.0;     // same at d / 2
  double rhs = 0.0;          // 2 (psi, dV/da psi) over the large component
  double richardson = 0.0;   // (4 lhs_half - lhs) / 3
  double delta = 0.0;
  double E = 0.0;
};

/// Compares the finite-difference slope of E(a) with the inner-product expression
/// 2 (psi1, dV/da psi1) (spin) or 2 (psi2, dV/da psi2) (pseudo-spin).
[[nodiscard]] inline DerivativeIdentity energy_derivative_identity(const PotentialFamily& family, double a,
                                                                   const Channel& ch, const DiracOptions& opts = {}) {
  DiracOptions o = opts;
  if (family.search) o.search = family.search;
  DerivativeIdentity out;
  out.delta = 1e-4 * std::max(1.0, std::abs(a));
  auto E_at = [&](double x) { return dirac_energy(family.at(x), ch, o).E; };
  const double d = out.delta;
  out.lhs = (E_at(a + d) - E_at(a - d)) / (2.0 * d);
  out.lhs_half = (E_at(a + 0.5 * d) - E_at(a - 0.5 * d)) / d;
  out.richardson = (4.0 * out.lhs_half - out.lhs) / 3.0;

  const auto sol = dirac_state(family.at(a), ch, o);
  out.E = sol.E;
  const auto r = sol.grid.radii();
  const auto& big = ch.mode == Symmetry::spin ? sol.psi1 : sol.psi2;
  std::vector<double> integrand(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) integrand[i] = big[i] * big[i] * family.derivative(r[i], a);
  out.rhs = 2.0 * detail::integrate_dr(integrand, r, sol.grid.step());
  return out;
}

}  // namespace dirac_bounds
