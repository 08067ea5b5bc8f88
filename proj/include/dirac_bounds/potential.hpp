#pragma once

// Radial potential shapes V(r). The analytic families carry their couplings
// directly; Custom wraps an arbitrary continuous shape scaled by v.

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "dirac_bounds/errors.hpp"

namespace dirac_bounds {

/// V(r) = v r^2
struct Oscillator {
  double v = 1.0;
};

/// V(r) = v r
struct Linear {
  double v = 1.0;
};

/// V(r) = -v / r
struct Coulomb {
  double v = 1.0;
};

/// V(r) = -v / r + c
struct ShiftedCoulomb {
  double v = 1.0;
  double c = 0.0;
};

/// V(r) = a / r^2 - v / r + c
struct Kratzer {
  double a = 0.0;
  double v = 1.0;
  double c = 0.0;
};

/// V(r) = v ln r
struct Log {
  double v = 1.0;
};

/// V(r) = v shape(r); shape must be continuous on (0, inf).
struct Custom {
  std::function<double(double)> shape;
  double v = 1.0;
  std::string name = "custom";
};

using PotentialModel = std::variant<Oscillator, Linear, Coulomb, ShiftedCoulomb, Kratzer, Log, Custom>;

namespace detail {
template <class>
inline constexpr bool always_false = false;

inline std::string fmt_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}
}  // namespace detail

/// Coefficient of the 1/r^2 term (non-zero only for Kratzer).
[[nodiscard]] inline double inverse_square_coefficient(const PotentialModel& V) {
  if (const auto* k = std::get_if<Kratzer>(&V)) return k->a;
  return 0.0;
}

/// V(r) without its 1/r^2 part.
[[nodiscard]] inline double regular_part(const PotentialModel& V, double r) {
  return std::visit(
      [r](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Oscillator>) {
          return p.v * r * r;
        } else if constexpr (std::is_same_v<T, Linear>) {
          return p.v * r;
        } else if constexpr (std::is_same_v<T, Coulomb>) {
          return -p.v / r;
        } else if constexpr (std::is_same_v<T, ShiftedCoulomb>) {
          return -p.v / r + p.c;
        } else if constexpr (std::is_same_v<T, Kratzer>) {
          return -p.v / r + p.c;
        } else if constexpr (std::is_same_v<T, Log>) {
          return p.v * std::log(r);
        } else if constexpr (std::is_same_v<T, Custom>) {
          return p.v * p.shape(r);
        } else {
          static_assert(detail::always_false<T>);
        }
      },
      V);
}

[[nodiscard]] inline double evaluate(const PotentialModel& V, double r) {
  return regular_part(V, r) + inverse_square_coefficient(V) / (r * r);
}

/// Overall coupling v of the model.
[[nodiscard]] inline double coupling(const PotentialModel& V) {
  return std::visit([](const auto& p) { return p.v; }, V);
}

[[nodiscard]] inline std::string family_name(const PotentialModel& V) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Oscillator>) return "oscillator";
        else if constexpr (std::is_same_v<T, Linear>) return "linear";
        else if constexpr (std::is_same_v<T, Coulomb>) return "coulomb";
        else if constexpr (std::is_same_v<T, ShiftedCoulomb>) return "shifted-coulomb";
        else if constexpr (std::is_same_v<T, Kratzer>) return "kratzer";
        else if constexpr (std::is_same_v<T, Log>) return "log";
        else return p.name;
      },
      V);
}

/// Short human-readable form, e.g. "shifted-coulomb(v=1,c=0.5)".
[[nodiscard]] inline std::string describe(const PotentialModel& V) {
  using detail::fmt_number;
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ShiftedCoulomb>) {
          return "shifted-coulomb(v=" + fmt_number(p.v) + ",c=" + fmt_number(p.c) + ")";
        } else if constexpr (std::is_same_v<T, Kratzer>) {
          return "kratzer(a=" + fmt_number(p.a) + ",v=" + fmt_number(p.v) + ",c=" + fmt_number(p.c) + ")";
        } else if constexpr (std::is_same_v<T, Custom>) {
          return p.name + "(v=" + fmt_number(p.v) + ")";
        } else {
          return family_name(PotentialModel{p}) + "(v=" + fmt_number(p.v) + ")";
        }
      },
      V);
}

/// V(r, a) = V1 + a (V2 - V1). Stays inside an analytic family whenever both
/// ends share one; the Coulomb-type families are promoted to Kratzer form.
[[nodiscard]] inline PotentialModel interpolate(const PotentialModel& V1, const PotentialModel& V2, double a) {
  auto lerp = [a](double x, double y) { return x + a * (y - x); };
  if (V1.index() == V2.index()) {
    if (const auto* p = std::get_if<Oscillator>(&V1)) return Oscillator{lerp(p->v, std::get<Oscillator>(V2).v)};
    if (const auto* p = std::get_if<Linear>(&V1)) return Linear{lerp(p->v, std::get<Linear>(V2).v)};
    if (const auto* p = std::get_if<Coulomb>(&V1)) return Coulomb{lerp(p->v, std::get<Coulomb>(V2).v)};
    if (const auto* p = std::get_if<Log>(&V1)) return Log{lerp(p->v, std::get<Log>(V2).v)};
  }
  auto as_kratzer = [](const PotentialModel& V) -> std::optional<Kratzer> {
    if (const auto* p = std::get_if<Coulomb>(&V)) return Kratzer{0.0, p->v, 0.0};
    if (const auto* p = std::get_if<ShiftedCoulomb>(&V)) return Kratzer{0.0, p->v, p->c};
    if (const auto* p = std::get_if<Kratzer>(&V)) return *p;
    return std::nullopt;
  };
  const auto k1 = as_kratzer(V1);
  const auto k2 = as_kratzer(V2);
  if (k1 && k2) {
    const Kratzer k{lerp(k1->a, k2->a), lerp(k1->v, k2->v), lerp(k1->c, k2->c)};
    if (k.a == 0.0) return ShiftedCoulomb{k.v, k.c};
    return k;
  }
  return Custom{[V1, V2, a](double r) { return evaluate(V1, r) + a * (evaluate(V2, r) - evaluate(V1, r)); }, 1.0,
                "interp[" + describe(V1) + "->" + describe(V2) + "]"};
}

}  // namespace dirac_bounds
