#pragma once

#include <algorithm>
#include <cmath>

namespace mono2d {

/// Cubic smoothstep: 0 for u <= 0, 1 for u >= 1, C^1 across the joints.
/// Max slope 3/2, attained at u = 1/2.
inline double smoothstep(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

inline double smoothstep_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 6.0 * u * (1.0 - u);
}

/// Antiderivative of smoothstep with value 0 at u = 0 (clamped below,
/// grows as u - 1/2 for u >= 1).
inline double smoothstep_integral(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 0.5 + (u - 1.0);
  return u * u * u - 0.5 * u * u * u * u;
}

/// Transition 1 -> 0 across [a, b].
inline double falloff(double r, double a, double b) {
  return 1.0 - smoothstep((r - a) / (b - a));
}

inline double falloff_deriv(double r, double a, double b) {
  return -smoothstep_deriv((r - a) / (b - a)) / (b - a);
}

}  // namespace mono2d
