#pragma once

// Quantum numbers of a single radial channel and the map onto the
// parameters (kappa, mu, L) of the combined second-order eigenequation
//
//   -psi'' + (kappa(kappa+1)/r^2 + 2(E+mu)V) psi = (E^2 - mu^2) psi.

#include <cmath>
#include <string>
#include <string_view>

#include "dirac_bounds/errors.hpp"

namespace dirac_bounds {

/// s = +1 for spin symmetry (S = V), s = -1 for pseudo-spin symmetry (S = -V).
enum class Symmetry : int { spin = 1, pseudo = -1 };

[[nodiscard]] constexpr int sign_of(Symmetry s) { return static_cast<int>(s); }

[[nodiscard]] constexpr Symmetry flipped(Symmetry s) {
  return s == Symmetry::spin ? Symmetry::pseudo : Symmetry::spin;
}

[[nodiscard]] inline std::string_view to_string(Symmetry s) {
  return s == Symmetry::spin ? "spin" : "pseudo";
}

[[nodiscard]] inline Symmetry parse_symmetry(std::string_view text) {
  if (text == "spin") return Symmetry::spin;
  if (text == "pseudo") return Symmetry::pseudo;
  throw UsageError("unknown symmetry mode '" + std::string(text) + "' (expected spin|pseudo)");
}

/// j is stored as twice its value so half-integers stay exact. For d = 1 the
/// fields j2 and tau are carried but do not enter any derived quantity.
struct Channel {
  int d = 3;
  int j2 = 1;
  int tau = 1;
  Symmetry mode = Symmetry::spin;
  int nu = 0;
  double m = 1.0;

  [[nodiscard]] double j() const { return 0.5 * j2; }
  [[nodiscard]] int s() const { return sign_of(mode); }
};

inline void validate(const Channel& ch) {
  if (ch.d < 1) throw DomainError("channel: dimension d must be >= 1");
  if (ch.nu < 0) throw DomainError("channel: node count nu must be >= 0");
  if (!(ch.m >= 0.0)) throw DomainError("channel: mass m must be >= 0");
  if (ch.d > 1) {
    if (ch.j2 <= 0 || ch.j2 % 2 == 0) throw DomainError("channel: j must be a positive half-integer (odd j2)");
    if (ch.tau != 1 && ch.tau != -1) throw DomainError("channel: tau must be +1 or -1");
  }
}

struct ChannelParams {
  double k_d = 0.0;
  double kappa = 0.0;
  double mu = 0.0;
  double L = 0.0;

  /// kappa(kappa + 1), the coefficient of 1/r^2.
  [[nodiscard]] double centrifugal() const { return kappa * (kappa + 1.0); }
};

/// k_d = tau (j + (d-2)/2) (zero for d = 1), kappa = s k_d, mu = s m and the
/// effective angular momentum L = |kappa + 1/2| - 1/2 with L(L+1) = kappa(kappa+1).
[[nodiscard]] inline ChannelParams derive(const Channel& ch) {
  validate(ch);
  ChannelParams p;
  // j + (d-2)/2 = (j2 + d - 2)/2, exact in binary.
  p.k_d = ch.d == 1 ? 0.0 : ch.tau * 0.5 * static_cast<double>(ch.j2 + ch.d - 2);
  p.kappa = ch.s() * p.k_d;
  p.mu = ch.s() * ch.m;
  p.L = std::abs(p.kappa + 0.5) - 0.5;
  return p;
}

/// Families with a closed-form principal quantum number.
enum class SpectrumFamily { oscillator, coulomb_like };

[[nodiscard]] inline SpectrumFamily parse_family(std::string_view tag) {
  if (tag == "oscillator") return SpectrumFamily::oscillator;
  if (tag == "coulomb" || tag == "coulomb-like" || tag == "shifted-coulomb" || tag == "log-envelope") {
    return SpectrumFamily::coulomb_like;
  }
  throw UsageError("principal_quantum: no closed-form P for family '" + std::string(tag) + "'");
}

/// Oscillator: P = 4 nu + 2L + 3. Coulomb-like: P = nu + 1 + L.
[[nodiscard]] inline double principal_quantum(int nu, double L, SpectrumFamily family) {
  switch (family) {
    case SpectrumFamily::oscillator:
      return 4.0 * nu + 2.0 * L + 3.0;
    case SpectrumFamily::coulomb_like:
      return nu + 1.0 + L;
  }
  throw UsageError("principal_quantum: unknown family");
}

[[nodiscard]] inline double principal_quantum(const Channel& ch, SpectrumFamily family) {
  return principal_quantum(ch.nu, derive(ch).L, family);
}

[[nodiscard]] inline double principal_quantum(const Channel& ch, std::string_view family) {
  return principal_quantum(ch, parse_family(family));
}

}  // namespace dirac_bounds
