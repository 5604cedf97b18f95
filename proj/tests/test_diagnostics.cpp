#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mono2d/diagnostics.hpp"

using namespace mono2d;
using testing::make;

namespace {

GridFunction solved_harmonic(double h) {
  MonotoneField id = make(FieldKind::identity);
  auto dom = build_disc_mesh(h);
  auto [u, rep] =
      solve_dirichlet(id, dom, [](double th) { return std::cos(2 * th); });
  return u;
}

}  // namespace

TEST_CASE("gradient image of an affine function is a point") {
  auto dom = build_disc_mesh(0.25);
  GridFunction u =
      interpolate(dom, [](PlaneVec p) { return 2.0 * p.x - p.y + 0.5; });
  for (double d : {1.0, 0.5, 0.1}) {
    GradientImage img = gradient_image(u, d);
    CHECK(img.diameter < 1e-12);
  }
}

TEST_CASE("gradient image of Re z^2 scales like 4 delta") {
  GridFunction u = solved_harmonic(1.0 / 32);
  double prev = 1e30;
  for (double d : {0.8, 0.4, 0.2, 0.1}) {
    GradientImage img = gradient_image(u, d);
    CHECK(img.diameter <= prev + 1e-12);  // cloud nesting
    CHECK(img.diameter == doctest::Approx(4.0 * d).epsilon(0.25));
    prev = img.diameter;
  }
  CHECK_THROWS_AS((void)gradient_image(u, 0.0), std::invalid_argument);
}

TEST_CASE("maxmin principle on affine and harmonic instances") {
  auto dom = build_disc_mesh(1.0 / 16);
  GridFunction aff = interpolate(dom, [](PlaneVec p) { return p.x + p.y; });
  MaxMinReport flat = maxmin_check(aff, 0.5);
  CHECK(flat.violations == 0);

  MaxMinReport rep = maxmin_check(solved_harmonic(1.0 / 16), 0.5);
  CHECK(rep.boundary_points > 0);
  CHECK(rep.fraction < 0.05);
}

TEST_CASE("cacciopoli ratio calibrates to one on the harmonic instance") {
  MonotoneField id = make(FieldKind::identity);
  GridFunction u = solved_harmonic(1.0 / 16);
  EllipticityProfile prof =
      sample_ellipticity(id, {-2.5, -2.5, 2.5, 2.5}, 0.25, {0.1, 0.01});
  CacciopoliReport O =
      cacciopoli_ratio(u, id, CacciopoliSide::O_lambda, 1.0, prof);
  CHECK(O.ratio == doctest::Approx(1.0).epsilon(0.15));
  CacciopoliReport V =
      cacciopoli_ratio(u, id, CacciopoliSide::V_Lambda, 1.0, prof);
  CHECK(V.ratio == doctest::Approx(1.0).epsilon(0.15));
  // Closed forms: both sides equal 2 pi for u = Re z^2.
  CHECK(O.lhs == doctest::Approx(2 * M_PI).epsilon(0.15));
  CHECK(O.rhs_factor == doctest::Approx(2 * M_PI).epsilon(0.05));

  auto dom = u.domain;
  GridFunction aff = interpolate(dom, [](PlaneVec p) { return p.x; });
  CacciopoliReport flat =
      cacciopoli_ratio(aff, id, CacciopoliSide::O_lambda, 1.0, prof);
  CHECK(flat.lhs < 1e-10);
  CHECK(flat.ratio < 1e-9);
}

TEST_CASE("cacciopoli ratio stays bounded under refinement") {
  MonotoneField id = make(FieldKind::identity);
  EllipticityProfile prof =
      sample_ellipticity(id, {-2.5, -2.5, 2.5, 2.5}, 0.25, {0.1, 0.01});
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 24}) {
    CacciopoliReport rep = cacciopoli_ratio(
        solved_harmonic(h), id, CacciopoliSide::O_lambda, 1.0, prof);
    CHECK(rep.ratio < 2.0);
    CHECK(rep.ratio > 0.5);
  }
}

TEST_CASE("localization probe classifications") {
  GridFunction u = solved_harmonic(1.0 / 16);
  LocalizationVerdict far =
      localization_probe(u, make(FieldKind::identity), {10, 0}, 1.0,
                         {0.4, 0.2, 0.1});
  CHECK(far.applicable);
  CHECK_FALSE(far.inconclusive);
  for (const auto& row : far.rows) CHECK(row.cls == LocClass::outside);

  // xi0 inside the gradient range: the hypothesis check refuses.
  LocalizationVerdict near =
      localization_probe(u, make(FieldKind::identity), {0.5, 0}, 1.0, {0.4});
  CHECK_FALSE(near.applicable);

  // Small rho around a value the gradient cloud converges into: inside.
  auto dom = u.domain;
  GridFunction aff = interpolate(dom, [](PlaneVec p) { return p.x; });
  LocalizationVerdict in =
      localization_probe(aff, make(FieldKind::identity), {1.5, 0}, 0.2,
                         {0.4, 0.2});
  CHECK(in.applicable);
  for (const auto& row : in.rows) CHECK(row.cls == LocClass::inside);
}
