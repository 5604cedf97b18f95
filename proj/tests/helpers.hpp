#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "mono2d/field.hpp"

namespace testing {

inline mono2d::MonotoneField make(mono2d::FieldKind kind) {
  mono2d::FieldSpec s;
  s.kind = kind;
  return mono2d::make_catalog_field(s);
}

inline mono2d::MonotoneField plap(double p) {
  mono2d::FieldSpec s;
  s.kind = mono2d::FieldKind::p_laplacian;
  s.p = p;
  return mono2d::make_catalog_field(s);
}

inline mono2d::MonotoneField rotational(double m) {
  mono2d::FieldSpec s;
  s.kind = mono2d::FieldKind::rotational_gm;
  s.m = m;
  return mono2d::make_catalog_field(s);
}

inline mono2d::MonotoneField separable(mono2d::ProfileSpec::Kind f,
                                       mono2d::ProfileSpec::Kind g,
                                       double fp = 1.0, double gp = 1.0) {
  mono2d::FieldSpec s;
  s.kind = mono2d::FieldKind::separable;
  s.fx.kind = f;
  s.fx.param = fp;
  s.gy.kind = g;
  s.gy.param = gp;
  return mono2d::make_catalog_field(s);
}

/// Deterministic uniform samples in the square [-R, R]^2.
struct BoxSampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> u;
  explicit BoxSampler(double R, std::uint64_t seed = 0x5eed)
      : rng(seed), u(-R, R) {}
  mono2d::PlaneVec operator()() { return {u(rng), u(rng)}; }
};

}  // namespace testing
