#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include "mono2d/plane_vec.hpp"

namespace mono2d {

enum class FieldKind {
  identity,
  p_laplacian,
  rotational_gm,
  g0_cubic,
  separable,
  pathological_sin,
  counterexample_s6,
  composite,
};

/// 1D monotone profile, one factor of a separable gradient field
/// G(x, y) = (f(x), g(y)).
struct ProfileSpec {
  enum class Kind { linear, cubic, plateau, power };
  Kind kind = Kind::linear;
  double param = 1.0;  // slope for linear, exponent for power
};

struct FieldSpec {
  FieldKind kind = FieldKind::identity;
  double p = 2.0;  // p_laplacian exponent, must be > 1
  double m = 0.5;  // rotational_gm generator scale, |m| <= 1/2
  ProfileSpec fx;  // separable: x-profile
  ProfileSpec gy;  // separable: y-profile
  std::string label;
};

/// Evaluatable strictly monotone planar vector field with catalog metadata.
/// Immutable after construction; evaluation is pure.
struct MonotoneField {
  FieldSpec spec;
  std::function<PlaneVec(PlaneVec)> evaluate;
  bool is_gradient = false;
  std::string smoothness_note;
  /// Convex potential with evaluate = grad(potential); null unless the
  /// catalog knows a closed form (energy-descent oracle in the solver).
  std::function<double(PlaneVec)> potential;

  PlaneVec operator()(PlaneVec v) const {
    PlaneVec out = evaluate(v);
    require_finite(out, "field evaluation");
    return out;
  }
};

/// Finite-difference ellipticity quotients of a field at (base, offset).
struct QuotientSample {
  PlaneVec base;
  PlaneVec offset;
  double q_lower = 0.0;      // <D G, offset> / |offset|^2
  double q_upper_inv = 0.0;  // <D G, offset> / |D G|^2, +inf sentinel
};

inline constexpr double kQuotientInf = std::numeric_limits<double>::infinity();
/// |D G| below this maps q_upper_inv to the +inf sentinel.
inline constexpr double kUnderflowGuard = 1e-14;

MonotoneField make_catalog_field(const FieldSpec& spec);

double monotonicity_gap(const MonotoneField& field, PlaneVec a, PlaneVec b);

QuotientSample quotient_sample(const MonotoneField& field, PlaneVec base,
                               PlaneVec offset);

/// Sampled (restricted) estimate of the modulus of monotony over pairs in
/// the ball of radius box_radius at distance >= t. Upper bound of the true
/// restricted infimum; deterministic for a fixed seed.
double modulus_of_monotony(const MonotoneField& field, double t,
                           double box_radius, std::size_t samples,
                           std::uint64_t seed = 0x5eed);

/// Antiderivative of |t| + |sin(1/t)| (the Remark-style pathological
/// profile); accurate to ~1e-10, odd in x.
double pathological_profile(double x);

/// One factor of a separable field.
double profile_eval(const ProfileSpec& s, double t);
/// Antiderivative of profile_eval (potential factor), zero at 0.
double profile_potential(const ProfileSpec& s, double t);

}  // namespace mono2d
