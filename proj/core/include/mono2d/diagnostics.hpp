#pragma once

#include <vector>

#include "mono2d/classify.hpp"
#include "mono2d/fem.hpp"

namespace mono2d {

struct GradientImage {
  double radius = 0.0;
  std::vector<PlaneVec> points;  // gradients over triangles meeting B_radius
  double diameter = 0.0;         // exact max pairwise distance
};

GradientImage gradient_image(const GridFunction& u, double delta);

struct MaxMinReport {
  double r = 0.0;
  double band = 0.0;  // inclusion tolerance, 2 h Lip
  int boundary_points = 0;
  int violations = 0;
  int unresolved = 0;  // cloud triangles excluded: gradient jump > band
  double fraction = 0.0;
};

/// Discrete surrogate of the gradient max/min principle: boundary points of
/// the gradient cloud over B_r (empty-disc probes at scale band) should lie
/// within band of the cloud over circle-adjacent triangles. Triangles whose
/// gradient is unresolved at mesh scale (neighbor jump > band) are excluded.
MaxMinReport maxmin_check(const GridFunction& u, double r);

enum class CacciopoliSide { O_lambda, V_Lambda };

struct CacciopoliReport {
  CacciopoliSide side = CacciopoliSide::O_lambda;
  double threshold = 0.0;
  double lhs = 0.0;         // second-order energy over B_{1/2} cap preimage
  double rhs_factor = 0.0;  // lambda^-2 |G(grad u)|^2_{B_1} or Lambda^2 |grad u|^2_{B_1}
  double ratio = 0.0;       // the empirical c0
};

/// Second derivatives are patch-recovered gradients calibrated per mesh on the
/// interpolant of x^2 - y^2 (exact |D^2 u|^2 = 8); preimage membership is a
/// profile lookup at the triangle gradient.
CacciopoliReport cacciopoli_ratio(const GridFunction& u,
                                  const MonotoneField& field,
                                  CacciopoliSide side, double threshold,
                                  const EllipticityProfile& profile);

enum class LocClass { inside, outside, mixed };

struct LocalizationRow {
  double delta = 0.0;
  LocClass cls = LocClass::mixed;
  double max_dist = 0.0, min_dist = 0.0;  // cloud distances to xi0
};

struct LocalizationVerdict {
  bool applicable = false;  // cloud over B_1 avoids B_rho(xi0)
  PlaneVec xi0;
  double rho = 0.0;
  std::vector<LocalizationRow> rows;
  bool inconclusive = false;  // mixed persists at the smallest delta
};

/// For each delta, classifies the gradient cloud over B_delta against the
/// balls B_{4 rho}(xi0) (inside) and B_{3 rho}(xi0) (outside). Reports the
/// table; never asserts the continuum dichotomy at fixed mesh size.
LocalizationVerdict localization_probe(const GridFunction& u,
                                       const MonotoneField& field,
                                       PlaneVec xi0, double rho,
                                       const std::vector<double>& delta_list);

}  // namespace mono2d
