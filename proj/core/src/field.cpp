#include "mono2d/field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mono2d/beltrami.hpp"
#include "mono2d/smooth.hpp"

namespace mono2d {

double profile_eval(const ProfileSpec& s, double t) {
  switch (s.kind) {
    case ProfileSpec::Kind::linear:
      return s.param * t;
    case ProfileSpec::Kind::cubic:
      return t * t * t;
    case ProfileSpec::Kind::power: {
      // 1D p-Laplacian profile |t|^{p-1} sgn t
      if (t == 0.0) return 0.0;
      return std::pow(std::abs(t), s.param - 1.0) * (t > 0 ? 1.0 : -1.0);
    }
    case ProfileSpec::Kind::plateau: {
      // derivative 0 on [-1/2, 1/2], 1 outside [-1, 1], smooth ramp between
      double a = std::abs(t);
      double v;
      if (a <= 0.5) {
        v = 0.0;
      } else if (a < 1.0) {
        v = 0.5 * smoothstep_integral((a - 0.5) / 0.5);
      } else {
        v = 0.25 + (a - 1.0);
      }
      return t >= 0 ? v : -v;
    }
  }
  return t;
}

double profile_potential(const ProfileSpec& s, double t) {
  double a = std::abs(t);
  switch (s.kind) {
    case ProfileSpec::Kind::linear:
      return 0.5 * s.param * t * t;
    case ProfileSpec::Kind::cubic:
      return 0.25 * t * t * t * t;
    case ProfileSpec::Kind::power:
      return std::pow(a, s.param) / s.param;
    case ProfileSpec::Kind::plateau: {
      if (a <= 0.5) return 0.0;
      if (a < 1.0) {
        double u = (a - 0.5) / 0.5;
        double u4 = u * u * u * u;
        return 0.25 * (0.25 * u4 - 0.1 * u4 * u);
      }
      double base = 0.25 * (0.25 - 0.1);
      return base + 0.25 * (a - 1.0) + 0.5 * (a - 1.0) * (a - 1.0);
    }
  }
  return 0.5 * t * t;
}

namespace {

void validate(const FieldSpec& spec) {
  if (spec.kind == FieldKind::p_laplacian && !(spec.p > 1.0))
    throw std::invalid_argument("p_laplacian requires p > 1, got p=" +
                                std::to_string(spec.p));
  if (spec.kind == FieldKind::rotational_gm && !(std::abs(spec.m) <= 0.5))
    throw std::invalid_argument("rotational_gm requires |m| <= 1/2, got m=" +
                                std::to_string(spec.m));
  if (spec.kind == FieldKind::separable) {
    auto check = [](const ProfileSpec& p) {
      if (p.kind == ProfileSpec::Kind::linear && !(p.param > 0.0))
        throw std::invalid_argument("separable linear profile needs slope > 0");
      if (p.kind == ProfileSpec::Kind::power && !(p.param > 1.0))
        throw std::invalid_argument("separable power profile needs exponent > 1");
    };
    check(spec.fx);
    check(spec.gy);
  }
}

}  // namespace

MonotoneField make_catalog_field(const FieldSpec& spec) {
  validate(spec);
  MonotoneField f;
  f.spec = spec;
  switch (spec.kind) {
    case FieldKind::identity:
      f.evaluate = [](PlaneVec v) { return v; };
      f.is_gradient = true;
      f.smoothness_note = "linear";
      f.potential = [](PlaneVec v) { return 0.5 * v.norm2(); };
      break;
    case FieldKind::p_laplacian: {
      double p = spec.p;
      f.evaluate = [p](PlaneVec v) -> PlaneVec {
        double r = v.norm();
        if (r == 0.0) return {0.0, 0.0};
        return std::pow(r, p - 2.0) * v;
      };
      f.is_gradient = true;
      f.smoothness_note =
          p == 2.0 ? "linear" : "smooth away from 0, degenerate at 0";
      f.potential = [p](PlaneVec v) { return std::pow(v.norm(), p) / p; };
      break;
    }
    case FieldKind::rotational_gm: {
      double m = spec.m;
      f.evaluate = [m](PlaneVec v) -> PlaneVec {
        double r = v.norm();
        if (r == 0.0) return {0.0, 0.0};  // continuous extension
        return v + (m * std::log(r)) * v.rot90();
      };
      f.is_gradient = false;
      f.smoothness_note = "smooth away from 0, antisymmetric part blows up at 0";
      break;
    }
    case FieldKind::g0_cubic:
      f.evaluate = [](PlaneVec v) -> PlaneVec {
        return {v.x * v.x * v.x - v.y, v.x + v.y};
      };
      f.is_gradient = false;
      f.smoothness_note = "polynomial";
      break;
    case FieldKind::separable: {
      ProfileSpec fx = spec.fx, gy = spec.gy;
      f.evaluate = [fx, gy](PlaneVec v) -> PlaneVec {
        return {profile_eval(fx, v.x), profile_eval(gy, v.y)};
      };
      f.is_gradient = true;
      f.smoothness_note = "separable gradient field";
      f.potential = [fx, gy](PlaneVec v) {
        return profile_potential(fx, v.x) + profile_potential(gy, v.y);
      };
      break;
    }
    case FieldKind::pathological_sin:
      f.evaluate = [](PlaneVec v) -> PlaneVec {
        return {pathological_profile(v.x), v.y};
      };
      f.is_gradient = true;
      f.smoothness_note = "C^1 fails at x=0 (oscillatory profile)";
      break;
    case FieldKind::counterexample_s6:
      return counterexample_field();
    case FieldKind::composite:
      throw std::invalid_argument(
          "composite fields are built through the transform chain, not the catalog");
  }
  if (f.spec.label.empty()) f.spec.label = "catalog";
  return f;
}

double monotonicity_gap(const MonotoneField& field, PlaneVec a, PlaneVec b) {
  return dot(field(a) - field(b), a - b);
}

QuotientSample quotient_sample(const MonotoneField& field, PlaneVec base,
                               PlaneVec offset) {
  if (offset.norm2() == 0.0)
    throw std::invalid_argument("quotient_sample: offset must be nonzero");
  QuotientSample q;
  q.base = base;
  q.offset = offset;
  PlaneVec d = field(base + offset) - field(base);
  double num = dot(d, offset);
  q.q_lower = num / offset.norm2();
  q.q_upper_inv = d.norm() < kUnderflowGuard ? kQuotientInf : num / d.norm2();
  return q;
}

double modulus_of_monotony(const MonotoneField& field, double t,
                           double box_radius, std::size_t samples,
                           std::uint64_t seed) {
  if (!(t > 0.0)) throw std::invalid_argument("modulus_of_monotony: t must be > 0");
  if (!(box_radius > 0.5 * t))
    throw std::invalid_argument("modulus_of_monotony: box_radius must exceed t/2");
  if (samples == 0)
    throw std::invalid_argument("modulus_of_monotony: samples must be > 0");

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](PlaneVec a, PlaneVec b) {
    double gap = dot(field(a) - field(b), a - b);
    if (gap < best) best = gap;
  };

  // Deterministic stratum: antipodal pairs at distance exactly t around a
  // small grid of centers (includes the origin).
  const int kAngles = 32;
  double cmax = box_radius - 0.5 * t;
  for (int ci = -2; ci <= 2; ++ci) {
    for (int cj = -2; cj <= 2; ++cj) {
      PlaneVec c{ci * cmax / 2.0, cj * cmax / 2.0};
      if (c.norm() > cmax) continue;
      for (int k = 0; k < kAngles; ++k) {
        double th = 2.0 * M_PI * k / kAngles;
        PlaneVec e{std::cos(th), std::sin(th)};
        consider(c + (0.5 * t) * e, c - (0.5 * t) * e);
      }
    }
  }

  // Random stratum: independent pairs in the box at distance >= t.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&]() -> PlaneVec {
    for (;;) {
      PlaneVec v{unit(rng) * box_radius, unit(rng) * box_radius};
      if (v.norm() <= box_radius) return v;
    }
  };
  for (std::size_t i = 0; i < samples; ++i) {
    PlaneVec a = draw(), b = draw();
    if ((a - b).norm() < t) continue;
    consider(a, b);
  }
  return best;
}

}  // namespace mono2d
