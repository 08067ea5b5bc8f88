#pragma once

// Scalar root finding and one-dimensional optimisation used by the spectral
// solvers. Every solver here works on a sign-changing bracket; nothing
// extrapolates outside it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "dirac_bounds/errors.hpp"

namespace dirac_bounds {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
};

struct RootOptions {
  double x_tol = 1e-12;  // absolute, widened to a few ulps for large |x|
  double f_tol = 0.0;    // accept early once |f| <= f_tol
  int max_iterations = 200;
};

struct RootResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
  Bracket bracket;
};

/// Bisection safeguarded secant on a bracket [lo, hi] with f(lo) f(hi) <= 0.
/// The secant step is taken only when it lands strictly inside the current
/// bracket and the bracket shrank by at least half over the last two steps.
template <class F>
RootResult solve_bracketed(F&& f, double lo, double hi, double f_lo, double f_hi,
                           const RootOptions& opts = {}) {
  if (lo > hi) {
    std::swap(lo, hi);
    std::swap(f_lo, f_hi);
  }
  if (f_lo == 0.0) return {lo, 0.0, 0, {lo, lo}};
  if (f_hi == 0.0) return {hi, 0.0, 0, {hi, hi}};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NumericalFailure("solve_bracketed: endpoints do not bracket a root");
  }

  // Secant history: the two most recent evaluations.
  double x_prev = lo, f_prev = f_lo;
  double x_last = hi, f_last = f_hi;
  double width_two_ago = std::numeric_limits<double>::infinity();
  double width_one_ago = hi - lo;

  for (int it = 1; it <= opts.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double tol = std::max(opts.x_tol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid));
    if (hi - lo <= tol) {
      const bool lo_better = std::abs(f_lo) <= std::abs(f_hi);
      return {lo_better ? lo : hi, lo_better ? f_lo : f_hi, it, {lo, hi}};
    }

    double x = mid;
    if (f_last != f_prev) {
      const double s = x_last - f_last * (x_last - x_prev) / (f_last - f_prev);
      const bool inside = s > lo && s < hi;
      const bool shrinking = (hi - lo) <= 0.5 * width_two_ago;
      if (inside && shrinking) x = s;
    }
    // Keep secant steps off the bracket ends so the bracket keeps shrinking.
    const double guard = 0.25 * tol;
    x = std::clamp(x, lo + guard, hi - guard);

    const double fx = f(x);
    x_prev = x_last;
    f_prev = f_last;
    x_last = x;
    f_last = fx;

    if (fx == 0.0 || (opts.f_tol > 0.0 && std::abs(fx) <= opts.f_tol)) {
      return {x, fx, it, {lo, hi}};
    }
    if (std::signbit(fx) == std::signbit(f_lo)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    width_two_ago = width_one_ago;
    width_one_ago = hi - lo;
  }
  throw NumericalFailure("solve_bracketed: iteration cap reached");
}

template <class F>
RootResult solve_bracketed(F&& f, double lo, double hi, const RootOptions& opts = {}) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  return solve_bracketed(std::forward<F>(f), lo, hi, f_lo, f_hi, opts);
}

/// Sub-intervals of a uniform n-point scan of [lo, hi] across which f changes sign.
template <class F>
std::vector<Bracket> scan_sign_changes(F&& f, double lo, double hi, std::size_t n) {
  std::vector<Bracket> out;
  if (n < 2) return out;
  double x0 = lo;
  double f0 = f(x0);
  for (std::size_t i = 1; i < n; ++i) {
    const double x1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1) && (f0 == 0.0 || std::signbit(f0) != std::signbit(f1))) {
      out.push_back({x0, x1});
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

/// Result of walking a geometric ladder until a sign change appears.
struct LadderBracket {
  double a, fa;
  double b, fb;
};

/// Walk from `start` towards `end` (may be +/-inf) on points
/// start + dir * step0 * 2^k, skipping points where `f` returns nullopt.
/// Returns the first pair of consecutive valid points with opposite signs.
template <class F>
std::optional<LadderBracket> ladder_bracket(F&& f, double start, double end, double step0,
                                            int max_steps = 80) {
  const double dir = end >= start ? 1.0 : -1.0;
  std::optional<std::pair<double, double>> last;
  auto visit = [&](double x) -> std::optional<LadderBracket> {
    const std::optional<double> fx = f(x);
    if (!fx || !std::isfinite(*fx)) return std::nullopt;
    if (*fx == 0.0) return LadderBracket{x, 0.0, x, 0.0};
    if (last && std::signbit(last->second) != std::signbit(*fx)) {
      return LadderBracket{last->first, last->second, x, *fx};
    }
    last = {x, *fx};
    return std::nullopt;
  };

  if (auto hit = visit(start)) return hit;
  double step = step0;
  double x_prev = start;
  for (int k = 0; k < max_steps; ++k, step *= 2.0) {
    const double x = start + dir * step;
    const bool past_end = std::isfinite(end) && (dir > 0 ? x >= end : x <= end);
    if (past_end) {
      // Close in on a finite end geometrically; the end itself is tried last.
      double gap = std::abs(end - x_prev);
      for (int j = 0; j < max_steps && gap > 1e-14 * (1.0 + std::abs(end)); ++j) {
        gap *= 0.5;
        if (auto hit = visit(end - dir * gap)) return hit;
      }
      return visit(end);
    }
    if (auto hit = visit(x)) return hit;
    x_prev = x;
  }
  return std::nullopt;
}

struct MinimizeResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

/// Golden-section minimisation of a unimodal f on [a, b].
template <class F>
MinimizeResult golden_section_minimize(F&& f, double a, double b, double x_tol = 1e-10,
                                       int max_iterations = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (std::abs(b - a) > x_tol * (1.0 + std::abs(c)) && it < max_iterations) {
    ++it;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? MinimizeResult{c, fc, it} : MinimizeResult{d, fd, it};
}

}  // namespace dirac_bounds
