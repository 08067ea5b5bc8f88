#pragma once

// Envelope bounds over the Coulomb base h(r) = -1/r. A shape f = g(h) is
// replaced by its tangent lines b(t) h + c(t); each tangent potential is a
// shifted Coulomb problem with an exact energy, and the comparison theorem
// turns the family into a bound. Convex g with v > 0 gives lower bounds.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dirac_bounds/channel.hpp"
#include "dirac_bounds/errors.hpp"
#include "dirac_bounds/roots.hpp"

namespace dirac_bounds {

struct TangentCoefficients {
  double t = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// b = g'(h(t)), c = g(h(t)) - h(t) g'(h(t)).
[[nodiscard]] inline TangentCoefficients tangent_coefficients(const std::function<double(double)>& g,
                                                              const std::function<double(double)>& dg,
                                                              const std::function<double(double)>& h, double t) {
  if (!(t > 0.0)) throw DomainError("tangent_coefficients: t must be positive");
  const double ht = h(t);
  const double slope = dg(ht);
  return {t, slope, g(ht) - ht * slope};
}

/// A radial shape f(r), with optional analytic first and second derivatives.
struct Shape {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  std::string name = "custom";

  [[nodiscard]] double value(double r) const { return f(r); }
  [[nodiscard]] double first(double r) const {
    if (df) return df(r);
    const double d = 1e-3 * r;
    return (f(r - 2.0 * d) - 8.0 * f(r - d) + 8.0 * f(r + d) - f(r + 2.0 * d)) / (12.0 * d);
  }
  [[nodiscard]] double second(double r) const {
    if (d2f) return d2f(r);
    const double d = 2e-3 * r;
    return (-f(r - 2.0 * d) + 16.0 * f(r - d) - 30.0 * f(r) + 16.0 * f(r + d) - f(r + 2.0 * d)) / (12.0 * d * d);
  }
};

[[nodiscard]] inline Shape log_shape() {
  return {[](double r) { return std::log(r); }, [](double r) { return 1.0 / r; },
          [](double r) { return -1.0 / (r * r); }, "log"};
}

/// Tangent to f = g(-1/r) at r = t, written in r: b = t^2 f'(t), c = f(t) + t f'(t).
[[nodiscard]] inline TangentCoefficients coulomb_tangent(const Shape& f, double t) {
  if (!(t > 0.0)) throw DomainError("coulomb_tangent: t must be positive");
  const double d1 = f.first(t);
  return {t, t * t * d1, f.value(t) + t * d1};
}

enum class BoundDirection { lower, upper };

[[nodiscard]] inline const char* to_string(BoundDirection d) { return d == BoundDirection::lower ? "lower" : "upper"; }

/// Sampled sign record of g'' for f = g(-1/r). With h = -1/r,
/// g''(h(t)) = t^3 (2 f'(t) + t f''(t)).
struct ConvexityCertificate {
  int samples = 0;
  int positive = 0;
  int negative = 0;
  double r_lo = 0.0;
  double r_hi = 0.0;

  // An affine g (f itself shifted Coulomb) is both.
  [[nodiscard]] bool convex() const { return samples > 0 && negative == 0; }
  [[nodiscard]] bool concave() const { return samples > 0 && positive == 0; }
};

[[nodiscard]] inline ConvexityCertificate certify_convexity(const Shape& f, double r_lo, double r_hi, int samples = 256) {
  ConvexityCertificate cert{samples, 0, 0, r_lo, r_hi};
  // Differenced derivatives carry ~1e-9 relative error.
  const double zero = f.d2f && f.df ? 1e-12 : 1e-6;
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (samples - 1));
    const double s = 2.0 * f.first(r) + r * f.second(r);
    const double scale = std::abs(f.first(r)) + std::abs(r * f.second(r));
    if (s > zero * scale) ++cert.positive;
    else if (s < -zero * scale) ++cert.negative;
  }
  return cert;
}

struct EnvelopeBound {
  double value = 0.0;
  BoundDirection direction = BoundDirection::lower;
  double t_opt = 0.0;
  double q_opt = 0.0;  // (v b(t_opt) / P)^2, i.e. (v t_opt / P)^2 for the log shape
  ConvexityCertificate convexity;
  bool multimodal = false;
  int local_optima = 0;
};

/// Implicit envelope formula for V = v ln r:
///   E_L = mu + v [1 + 2 ln P - ln(v (mu + E_L))],  P = nu + 1 + L,
/// a lower bound for v > 0 and an upper bound for v < 0.
[[nodiscard]] inline EnvelopeBound log_envelope_bound(double v, const Channel& ch) {
  const auto p = derive(ch);
  if (v == 0.0) throw DomainError("log_envelope_bound: v must be non-zero");
  const double mu = p.mu;
  const double P = principal_quantum(ch.nu, p.L, SpectrumFamily::coulomb_like);
  const double K = 1.0 + 2.0 * std::log(P);
  // u = v (mu + E) > 0, E = u / v - mu. R is monotone in u and spans all signs.
  auto R = [&](double s) {
    const double u = std::exp(s);
    return u / v - 2.0 * mu - v * K + v * s;
  };
  const double dir = v > 0.0 ? 1.0 : -1.0;
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 200 && dir * R(lo) > 0.0; ++i) lo -= 2.0 * (1.0 + std::abs(lo));
  for (int i = 0; i < 200 && dir * R(hi) < 0.0; ++i) hi += 1.0 + 0.5 * std::abs(hi);
  if (!(dir * R(lo) <= 0.0 && dir * R(hi) >= 0.0)) throw NumericalFailure("log_envelope_bound: no root");
  const double s = solve_bracketed(R, lo, hi, RootOptions{1e-15, 0.0, 400}).x;
  const double u = std::exp(s);

  EnvelopeBound out;
  out.value = u / v - mu;
  out.direction = v > 0.0 ? BoundDirection::lower : BoundDirection::upper;
  out.q_opt = v * v / u;  // v / (mu + E)
  out.t_opt = P * std::sqrt(out.q_opt) / std::abs(v);
  out.convexity = certify_convexity(log_shape(), 1e-3, 1e3);
  out.local_optima = 1;
  return out;
}

struct TangentSearch {
  double t_lo = 1e-3;
  double t_hi = 1e3;
  int grid_points = 400;
};

/// Best shifted-Coulomb tangent energy for V = v f(r): maximised for a lower
/// bound (convex g, v > 0, or concave g, v < 0), minimised otherwise.
/// Tangents without a discrete state in the channel are skipped.
[[nodiscard]] inline EnvelopeBound coulomb_base_envelope(const Shape& f, double v, const Channel& ch,
                                                         const TangentSearch& search = {}) {
  if (v == 0.0) throw DomainError("coulomb_base_envelope: v must be non-zero");
  if (!(search.t_lo > 0.0 && search.t_hi > search.t_lo && search.grid_points >= 3)) {
    throw DomainError("coulomb_base_envelope: invalid tangent search range");
  }
  const auto p = derive(ch);
  const double mu = p.mu;
  const double P = principal_quantum(ch.nu, p.L, SpectrumFamily::coulomb_like);

  EnvelopeBound out;
  out.convexity = certify_convexity(f, search.t_lo, search.t_hi);
  if (!out.convexity.convex() && !out.convexity.concave()) {
    throw NotApplicable("coulomb_base_envelope: g'' changes sign on the tangent range");
  }
  const bool lower = out.convexity.convex() == (v > 0.0);
  out.direction = lower ? BoundDirection::lower : BoundDirection::upper;
  const double sense = lower ? -1.0 : 1.0;  // minimise sense * E

  const double inf = std::numeric_limits<double>::infinity();
  auto energy = [&](double t) {
    const auto tc = coulomb_tangent(f, t);
    const double vb = v * tc.b;
    const double vc = v * tc.c;
    if (!(vb * (vc + mu) > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return -mu + 2.0 * (mu + vc) / (1.0 + vb * vb / (P * P));
  };
  auto objective = [&](double s) {
    const double e = energy(std::exp(s));
    return std::isnan(e) ? inf : sense * e;
  };

  const double s_lo = std::log(search.t_lo);
  const double s_hi = std::log(search.t_hi);
  const int n = search.grid_points;
  std::vector<double> s_grid(n), obj(n);
  for (int i = 0; i < n; ++i) {
    s_grid[i] = s_lo + (s_hi - s_lo) * i / (n - 1);
    obj[i] = objective(s_grid[i]);
  }
  const auto best = static_cast<int>(std::min_element(obj.begin(), obj.end()) - obj.begin());
  if (!std::isfinite(obj[best])) throw NumericalFailure("coulomb_base_envelope: no admissible tangent in range");
  int optima = 0;
  for (int i = 1; i + 1 < n; ++i) {
    if (std::isfinite(obj[i]) && obj[i] < obj[i - 1] && obj[i] <= obj[i + 1]) ++optima;
  }
  out.local_optima = std::max(optima, 1);
  out.multimodal = optima > 1;

  const double a = s_grid[std::max(best - 1, 0)];
  const double b = s_grid[std::min(best + 1, n - 1)];
  const auto refined = golden_section_minimize(objective, a, b, 1e-12);
  const double s_opt = refined.f <= obj[best] ? refined.x : s_grid[best];
  out.t_opt = std::exp(s_opt);
  out.value = energy(out.t_opt);
  const double vb = v * coulomb_tangent(f, out.t_opt).b;  // v t for the log shape
  out.q_opt = (vb / P) * (vb / P);
  return out;
}

}  // namespace dirac_bounds
