#pragma once

// Bound states of the generic radial problem
//
//   -psi'' + (L(L+1)/r^2 + U(r)) psi = F psi,   psi(0) = psi(inf) = 0,
//
// by Numerov shooting on a grid uniform in x = ln r. With phi = psi / sqrt(r)
// the equation becomes phi'' = [(L+1/2)^2 + r^2 (U - F)] phi, which has no
// first-derivative term and starts cleanly as phi ~ exp((L+1/2) x) at small r.
// The state with nu interior nodes is located by node-count bracketing and
// refined with the perturbative (Cooley) correction derived from the Numerov
// defect at the outer classical turning point.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirac_bounds/errors.hpp"

namespace dirac_bounds {

/// Grid uniform in ln r: r_i = r_min exp(i h), h = ln(r_max / r_min) / (n - 1).
struct RadialGrid {
  double r_min = 1e-6;
  double r_max = 50.0;
  std::size_t n = 7500;

  [[nodiscard]] double step() const { return std::log(r_max / r_min) / static_cast<double>(n - 1); }
  [[nodiscard]] double r(std::size_t i) const { return r_min * std::exp(static_cast<double>(i) * step()); }

  [[nodiscard]] std::vector<double> radii() const {
    std::vector<double> out(n);
    const double h = step();
    for (std::size_t i = 0; i < n; ++i) out[i] = r_min * std::exp(static_cast<double>(i) * h);
    return out;
  }

  /// Smallest grid on [r_min, r_max] whose log step does not exceed max_step.
  [[nodiscard]] static RadialGrid with_step(double r_min, double r_max, double max_step) {
    const auto intervals = static_cast<std::size_t>(std::ceil(std::log(r_max / r_min) / max_step));
    return {r_min, r_max, std::max<std::size_t>(intervals + 1, 1000)};
  }
};

inline void validate(const RadialGrid& g) {
  if (!(g.r_min > 0.0)) throw DomainError("RadialGrid: r_min must be > 0");
  if (!(g.r_max > g.r_min)) throw DomainError("RadialGrid: r_max must exceed r_min");
  if (g.n < 1000) throw DomainError("RadialGrid: at least 1000 points required");
  if (!(g.step() < 0.01)) throw DomainError("RadialGrid: log step must be below 0.01");
}

struct RadialOptions {
  double r_min = 1e-6;
  double r_max = 0.0;            // <= 0 selects the adaptive outer radius
  double max_step = 0.0025;      // in ln r
  double tol = 1e-10;            // absolute, on F
  int max_iterations = 200;
  double tail_decay = 28.0;      // e-folds of decay required beyond the turning point
  double initial_r_max = 40.0;
  double r_max_limit = 2e5;
  std::optional<double> initial_guess;
};

/// phi'' = [centrifugal + 1/4 + r^2 (U(r) - F)] phi with centrifugal = L(L+1).
/// Non-integer L is allowed; centrifugal must be >= -1/4.
struct RadialProblem {
  std::function<double(double)> potential;
  double centrifugal = 0.0;
  int nu = 0;
};

struct ShootingResult {
  double eigenvalue = 0.0;
  int nodes = 0;
  /// Energy equivalent of the log-derivative defect at the matching point.
  double mismatch = 0.0;
  bool converged = false;
  int iterations = 0;
  RadialGrid grid;
  /// psi(r_i) with integral psi^2 dr = 1, positive near the origin; zero past the
  /// point where the tail has decayed by tail_decay e-folds.
  std::vector<double> psi;
};

/// Strict sign changes of a sampled function; zeros (including endpoint zeros) are skipped.
[[nodiscard]] inline int node_count(std::span<const double> samples) {
  int count = 0;
  int last_sign = 0;
  for (double y : samples) {
    const int sign = (y > 0.0) - (y < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++count;
    last_sign = sign;
  }
  return count;
}

namespace detail {

/// Composite Simpson on uniform spacing h (trapezoid on a trailing odd interval).
[[nodiscard]] inline double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  const std::size_t even_end = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  double s = 0.0;
  for (std::size_t i = 0; i + 2 <= even_end; i += 2) s += f[i] + 4.0 * f[i + 1] + f[i + 2];
  s *= h / 3.0;
  if (even_end != n - 1) s += 0.5 * h * (f[n - 2] + f[n - 1]);
  return s;
}

class NumerovShooter {
 public:
  NumerovShooter(const RadialProblem& problem, const RadialGrid& grid, double tail_decay)
      : grid_(grid), nu_(problem.nu), tail_decay_(tail_decay) {
    validate(grid);
    if (!(problem.centrifugal >= -0.25)) throw DomainError("radial problem: L(L+1) must be >= -1/4");
    const std::size_t n = grid.n;
    h_ = grid.step();
    ell_ = std::sqrt(problem.centrifugal + 0.25);
    r_ = grid.radii();
    r2_.resize(n);
    base_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = r_[i];
      const double u = problem.potential(r);
      if (!std::isfinite(u)) throw DomainError("radial problem: potential not finite on the grid");
      r2_[i] = r * r;
      base_[i] = problem.centrifugal + 0.25 + r2_[i] * u;
    }
    q_.resize(n);
    w_.resize(n);
    phi_.resize(n);
  }

  /// Bounds valid for every bound state on this grid: q > 0 everywhere below
  /// `lower`, and a state must lie below the effective potential at r_max.
  [[nodiscard]] double lower_bound() const {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r_.size(); ++i) lo = std::min(lo, base_[i] / r2_[i]);
    return lo;
  }
  [[nodiscard]] double upper_bound() const { return base_.back() / r2_.back(); }

  struct Evaluation {
    int nodes = 0;
    double correction = 0.0;  // perturbative estimate of (eigenvalue - F)
    double log_derivative_jump = 0.0;
    bool tail_short = false;
    std::size_t match = 0;
    std::size_t end = 0;
  };

  Evaluation evaluate(double F) {
    const std::size_t n = r_.size();
    const double h2_12 = h_ * h_ / 12.0;
    for (std::size_t i = 0; i < n; ++i) {
      q_[i] = base_[i] - F * r2_[i];
      w_[i] = 1.0 - h2_12 * q_[i];
    }

    Evaluation ev;
    // Outer classical turning point.
    std::size_t turn = n;
    for (std::size_t i = n; i-- > 0;) {
      if (q_[i] < 0.0) {
        turn = i;
        break;
      }
    }
    if (turn == n) turn = static_cast<std::size_t>(std::min_element(q_.begin(), q_.end()) - q_.begin());

    // Inward start: tail_decay e-folds past the turning point.
    std::size_t end = n - 1;
    double decay = 0.0;
    ev.tail_short = true;
    for (std::size_t i = turn + 1; i < n; ++i) {
      decay += std::sqrt(std::max(q_[i], 0.0)) * h_;
      if (decay >= tail_decay_) {
        end = i;
        ev.tail_short = false;
        break;
      }
    }
    end = std::max<std::size_t>(end, std::min<std::size_t>(n - 1, 8));
    const std::size_t match = std::clamp<std::size_t>(turn, 2, end - 3);

    // Outward from the origin.
    phi_[0] = 1.0;
    phi_[1] = std::exp(ell_ * h_);
    for (std::size_t i = 1; i <= match; ++i) {
      phi_[i + 1] = ((12.0 - 10.0 * w_[i]) * phi_[i] - w_[i - 1] * phi_[i - 1]) / w_[i + 1];
      if (std::abs(phi_[i + 1]) > kRescale) {
        for (std::size_t k = 0; k <= i + 1; ++k) phi_[k] /= kRescale;
      }
    }
    const double phi_out_m = phi_[match];
    const double phi_out_before = phi_[match - 1];
    const int nodes_out = node_count(std::span<const double>(phi_.data(), match + 1));

    // Inward from the tail.
    std::fill(phi_.begin() + static_cast<std::ptrdiff_t>(end), phi_.end(), 0.0);
    phi_[end - 1] = 1e-30;
    for (std::size_t i = end - 1; i > match; --i) {
      phi_[i - 1] = ((12.0 - 10.0 * w_[i]) * phi_[i] - w_[i + 1] * phi_[i + 1]) / w_[i - 1];
      if (std::abs(phi_[i - 1]) > kRescale) {
        for (std::size_t k = i - 1; k < end; ++k) phi_[k] /= kRescale;
      }
    }
    const int nodes_in = node_count(std::span<const double>(phi_.data() + match, end - match));

    double scale = phi_out_m / phi_[match];
    if (!std::isfinite(scale) || scale == 0.0) scale = phi_out_m == 0.0 ? 1.0 : std::copysign(kRescale, phi_out_m);
    for (std::size_t i = match; i < end; ++i) phi_[i] *= scale;
    phi_[match] = phi_out_m;
    phi_[match - 1] = phi_out_before;

    ev.nodes = nodes_out + nodes_in;
    ev.match = match;
    ev.end = end;

    // Numerov defect at the match point ~ h (phi'_in - phi'_out).
    const double defect = w_[match + 1] * phi_[match + 1] - (12.0 - 10.0 * w_[match]) * phi_[match] +
                          w_[match - 1] * phi_[match - 1];
    const double jump = -defect / h_;  // phi'_out - phi'_in in x
    norm_buffer_.resize(end + 1);
    for (std::size_t i = 0; i <= end; ++i) norm_buffer_[i] = r2_[i] * phi_[i] * phi_[i];
    const double norm = simpson(norm_buffer_, h_);
    ev.correction = phi_[match] * jump / norm;
    ev.log_derivative_jump = phi_[match] != 0.0 ? jump / phi_[match] : 0.0;
    return ev;
  }

  /// psi = sqrt(r) phi from the most recent evaluation, normalised and made
  /// positive near the origin.
  [[nodiscard]] std::vector<double> wavefunction(std::size_t end) const {
    const std::size_t n = r_.size();
    std::vector<double> psi(n, 0.0);
    std::vector<double> density(end + 1);
    for (std::size_t i = 0; i <= end; ++i) density[i] = r2_[i] * phi_[i] * phi_[i];
    const double norm = std::sqrt(simpson(density, h_));
    const double sign = phi_[0] >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < end; ++i) psi[i] = sign * std::sqrt(r_[i]) * phi_[i] / norm;
    return psi;
  }

  [[nodiscard]] const RadialGrid& grid() const { return grid_; }

 private:
  static constexpr double kRescale = 1e150;

  RadialGrid grid_;
  int nu_;
  double tail_decay_;
  double h_ = 0.0;
  double ell_ = 0.0;  // L + 1/2
  std::vector<double> r_, r2_, base_, q_, w_, phi_, norm_buffer_;
};

struct FixedGridOutcome {
  ShootingResult result;
  bool tail_short = false;
  bool below_threshold = true;  // false when nu + 1 states do not fit under V_eff(r_max)
};

inline FixedGridOutcome shoot_on_grid(const RadialProblem& problem, const RadialGrid& grid, double tol,
                                      int max_iterations, double tail_decay, std::optional<double> guess) {
  NumerovShooter shooter(problem, grid, tail_decay);
  double lo = shooter.lower_bound();
  double hi = shooter.upper_bound();
  FixedGridOutcome out;
  out.result.grid = grid;

  const auto at_hi = shooter.evaluate(hi);
  if (at_hi.nodes <= problem.nu) {
    out.below_threshold = false;
    return out;
  }

  double F = guess && *guess > lo && *guess < hi ? *guess : 0.5 * (lo + hi);
  NumerovShooter::Evaluation ev;
  for (int it = 1; it <= max_iterations; ++it) {
    ev = shooter.evaluate(F);
    out.result.iterations = it;
    bool use_correction = false;
    if (ev.nodes > problem.nu) {
      hi = F;
    } else if (ev.nodes < problem.nu) {
      lo = F;
    } else {
      if (ev.correction > 0.0) lo = F;
      else hi = F;
      if (std::abs(ev.correction) <= tol) {
        out.result.eigenvalue = F + ev.correction;
        out.result.nodes = ev.nodes;
        out.result.mismatch = ev.correction;
        out.result.converged = true;
        out.tail_short = ev.tail_short;
        out.result.psi = shooter.wavefunction(ev.end);
        return out;
      }
      use_correction = true;
    }
    if (hi - lo <= tol && ev.nodes == problem.nu) {
      out.result.eigenvalue = 0.5 * (lo + hi);
      out.result.nodes = ev.nodes;
      out.result.mismatch = ev.correction;
      out.result.converged = true;
      out.tail_short = ev.tail_short;
      out.result.psi = shooter.wavefunction(ev.end);
      return out;
    }
    const double next = F + ev.correction;
    F = use_correction && next > lo && next < hi ? next : 0.5 * (lo + hi);
  }
  out.result.eigenvalue = F;
  out.result.nodes = ev.nodes;
  out.result.mismatch = ev.correction;
  out.result.converged = false;
  out.tail_short = ev.tail_short;
  return out;
}

/// Radius at which the tail beyond the outer turning point has decayed by
/// `decay` e-folds, estimated by integrating sqrt(V_eff - F) past the grid.
inline double required_r_max(const RadialProblem& problem, double F, double r_start, double decay) {
  auto v_eff = [&](double r) { return problem.centrifugal / (r * r) + problem.potential(r) - F; };
  double r = r_start;
  // Skip any remaining classically allowed stretch.
  for (int k = 0; k < 4000 && v_eff(r) <= 0.0; ++k) r *= 1.01;
  double acc = 0.0;
  for (int k = 0; k < 200000 && acc < decay; ++k) {
    const double dr = 0.01 * r + 1e-3;
    acc += std::sqrt(std::max(v_eff(r + 0.5 * dr), 0.0)) * dr;
    r += dr;
  }
  return r;
}

}  // namespace detail

/// Solve on a fixed grid. Throws NoBoundState when fewer than nu + 1 states
/// fit below the effective potential at r_max, NumericalFailure on non-convergence.
inline ShootingResult schrodinger_eigenvalue(const RadialProblem& problem, const RadialGrid& grid, double tol = 1e-10,
                                             int max_iterations = 200) {
  if (problem.nu < 0) throw DomainError("radial problem: nu must be >= 0");
  auto out = detail::shoot_on_grid(problem, grid, tol, max_iterations, 28.0, std::nullopt);
  if (!out.below_threshold) throw NoBoundState("no state with " + std::to_string(problem.nu) + " nodes on the grid");
  if (!out.result.converged) throw NumericalFailure("radial shooting did not converge");
  return out.result;
}

/// Solve with an adaptive outer radius: the grid is extended until the tail
/// has decayed by opts.tail_decay e-folds inside it.
inline ShootingResult schrodinger_eigenvalue(const RadialProblem& problem, const RadialOptions& opts = {}) {
  if (problem.nu < 0) throw DomainError("radial problem: nu must be >= 0");
  const bool fixed = opts.r_max > 0.0;
  double r_max = fixed ? opts.r_max : opts.initial_r_max;
  std::optional<double> guess = opts.initial_guess;
  for (int attempt = 0; attempt < 24; ++attempt) {
    const auto grid = RadialGrid::with_step(opts.r_min, r_max, opts.max_step);
    auto out = detail::shoot_on_grid(problem, grid, opts.tol, opts.max_iterations, opts.tail_decay, guess);
    if (!out.below_threshold) {
      if (fixed || r_max >= opts.r_max_limit) {
        throw NoBoundState("no state with " + std::to_string(problem.nu) + " nodes below the continuum threshold");
      }
      r_max = std::min(4.0 * r_max, opts.r_max_limit);
      continue;
    }
    if (!out.result.converged) throw NumericalFailure("radial shooting did not converge");
    if (!out.tail_short || fixed) return out.result;
    if (r_max >= opts.r_max_limit) throw NumericalFailure("radial tail does not decay within r_max_limit");
    const double needed = detail::required_r_max(problem, out.result.eigenvalue, r_max, opts.tail_decay);
    r_max = std::min(std::max(1.25 * needed, 1.5 * r_max), opts.r_max_limit);
    guess = out.result.eigenvalue;
  }
  throw NumericalFailure("radial grid adaptation did not settle");
}

/// F_{nu L}(v) for -psi'' + (L(L+1)/r^2 + v f(r)) psi = F psi.
inline ShootingResult schrodinger_eigenvalue(const std::function<double(double)>& shape, double v, double L, int nu,
                                             const RadialOptions& opts = {}) {
  RadialProblem problem{[shape, v](double r) { return v * shape(r); }, L * (L + 1.0), nu};
  return schrodinger_eigenvalue(problem, opts);
}

/// P = F_{nu L}(1) for the linear shape f(r) = r.
inline double linear_P(double L, int nu, const RadialOptions& opts = {}) {
  return schrodinger_eigenvalue([](double r) { return r; }, 1.0, L, nu, opts).eigenvalue;
}

/// e(1) = F_{nu L}(1) for the log shape f(r) = ln r.
inline double log_e1(double L, int nu, const RadialOptions& opts = {}) {
  return schrodinger_eigenvalue([](double r) { return std::log(r); }, 1.0, L, nu, opts).eigenvalue;
}

}  // namespace dirac_bounds
