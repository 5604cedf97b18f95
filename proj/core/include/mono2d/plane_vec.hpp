#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mono2d {

/// A point/vector in the plane. Identified with a complex number via
/// (x, y) <-> x + iy where needed.
struct PlaneVec {
  double x = 0.0;
  double y = 0.0;

  constexpr PlaneVec() = default;
  constexpr PlaneVec(double x_, double y_) : x(x_), y(y_) {}

  constexpr PlaneVec operator+(PlaneVec o) const { return {x + o.x, y + o.y}; }
  constexpr PlaneVec operator-(PlaneVec o) const { return {x - o.x, y - o.y}; }
  constexpr PlaneVec operator-() const { return {-x, -y}; }
  constexpr PlaneVec operator*(double s) const { return {s * x, s * y}; }
  constexpr PlaneVec operator/(double s) const { return {x / s, y / s}; }
  PlaneVec& operator+=(PlaneVec o) { x += o.x; y += o.y; return *this; }
  PlaneVec& operator-=(PlaneVec o) { x -= o.x; y -= o.y; return *this; }

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }

  /// Counterclockwise rotation by pi/2, the action of i.
  constexpr PlaneVec rot90() const { return {-y, x}; }

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr PlaneVec operator*(double s, PlaneVec v) { return {s * v.x, s * v.y}; }

inline double dot(PlaneVec a, PlaneVec b) { return a.x * b.x + a.y * b.y; }

inline std::complex<double> to_complex(PlaneVec v) { return {v.x, v.y}; }
inline PlaneVec to_vec(std::complex<double> z) { return {z.real(), z.imag()}; }

inline void require_finite(PlaneVec v, const char* what) {
  if (!v.finite()) throw std::runtime_error(std::string("non-finite value in ") + what);
}

}  // namespace mono2d
