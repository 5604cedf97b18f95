#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mono2d/beltrami.hpp"
#include "mono2d/classify.hpp"

using namespace mono2d;
using testing::make;
using testing::plap;
using testing::rotational;
using testing::separable;

TEST_CASE("identity profile is flat at one") {
  MonotoneField id = make(FieldKind::identity);
  EllipticityProfile prof =
      sample_ellipticity(id, {-1, -1, 1, 1}, 0.5, {0.1, 0.01});
  REQUIRE(prof.cells.size() > 0);
  for (const auto& c : prof.cells) {
    CHECK(c.lambda_hat == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(c.Lambda_hat == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("profile invariant lambda_hat <= Lambda_hat") {
  for (const MonotoneField& f :
       {plap(4.0), plap(1.5), make(FieldKind::g0_cubic), rotational(0.5)}) {
    EllipticityProfile prof =
        sample_ellipticity(f, {-1, -1, 1, 1}, 0.25, {0.1, 0.01});
    for (const auto& c : prof.cells)
      CHECK(c.lambda_hat <= c.Lambda_hat * (1.0 + 1e-9));
  }
}

TEST_CASE("p-Laplacian profiles show the p > 2 / p < 2 swap") {
  std::vector<double> scales{0.5, 0.1, 0.01};
  EllipticityProfile p4 =
      sample_ellipticity(plap(4.0), {-1, -1, 1, 1}, 0.5, scales);
  int origin = p4.index_of({0, 0});
  REQUIRE(origin >= 0);
  const auto& c4 = p4.cells[origin];
  CHECK(c4.lambda_by_scale[0] > c4.lambda_by_scale[1]);
  CHECK(c4.lambda_by_scale[1] > c4.lambda_by_scale[2]);
  CHECK(c4.lambda_hat < 1e-3);
  CHECK(c4.Lambda_hat < 2.0);  // upper quotient stays controlled at the origin
  int off = p4.index_of({1, 0});
  CHECK(p4.cells[off].lambda_hat > 0.5);

  EllipticityProfile p15 =
      sample_ellipticity(plap(1.5), {-1, -1, 1, 1}, 0.5, scales);
  const auto& c15 = p15.cells[p15.index_of({0, 0})];
  CHECK(c15.Lambda_by_scale[2] > c15.Lambda_by_scale[1]);
  CHECK(c15.Lambda_by_scale[1] > c15.Lambda_by_scale[0]);
  CHECK(c15.Lambda_hat > 5.0);
  CHECK(c15.lambda_hat > 0.5);  // no lower degeneracy for p < 2
}

TEST_CASE("rotational field keeps the symmetric bound and blows up at 0") {
  EllipticityProfile prof =
      sample_ellipticity(rotational(0.5), {-1, -1, 1, 1}, 0.25, {0.1, 1e-3});
  for (const auto& c : prof.cells) CHECK(c.lambda_hat >= 0.45);
  const auto& c0 = prof.cells[prof.index_of({0, 0})];
  CHECK(c0.Lambda_hat > 5.0);
  CHECK(c0.Lambda_hat > 2.0 * prof.cells[prof.index_of({1, 0})].Lambda_hat);
}

TEST_CASE("g0 cubic degenerates along the x = 0 axis only") {
  // The gradient of (x, y) -> (x^3 - y, x + y) is independent of y; its
  // symmetric part collapses exactly on the x = 0 line.
  MonotoneField g0 = make(FieldKind::g0_cubic);
  EllipticityProfile prof =
      sample_ellipticity(g0, {-1, -1, 1, 1}, 0.5, {0.1, 0.01});
  for (double y : {-1.0, 0.0, 1.0}) {
    const auto& on_axis = prof.cells[prof.index_of({0, y})];
    CHECK(on_axis.Lambda_hat > 50.0);   // S-side degeneracy
    CHECK(on_axis.lambda_hat < 1e-3);   // the same direction kills q_lower
  }
  for (double x : {-1.0, 1.0}) {
    const auto& off_axis = prof.cells[prof.index_of({x, 0})];
    CHECK(off_axis.Lambda_hat < 10.0);
    CHECK(off_axis.lambda_hat > 0.5);
  }
}

TEST_CASE("bad set detection") {
  MonotoneField id = make(FieldKind::identity);
  EllipticityProfile idp =
      sample_ellipticity(id, {-1, -1, 1, 1}, 0.5, {0.1, 0.01});
  CHECK(detect_bad_set(idp, 0.5, 2.0).empty());

  // Plateau factor degenerates lambda on strips without upper blow-up:
  // D infinite, D cap S empty, so the bad set stays empty.
  MonotoneField sep =
      separable(ProfileSpec::Kind::plateau, ProfileSpec::Kind::linear);
  EllipticityProfile sepp =
      sample_ellipticity(sep, {-1.5, -1.5, 1.5, 1.5}, 0.25, {0.1, 0.01});
  bool lambda_degenerates = false;
  for (const auto& c : sepp.cells)
    lambda_degenerates = lambda_degenerates || c.lambda_hat < 1e-3;
  CHECK(lambda_degenerates);
  CHECK(detect_bad_set(sepp, 1e-3, 1e3).empty());
}

TEST_CASE("counterexample bad set traces F(S^1)") {
  CounterexampleBundle b = build_counterexample();
  EllipticityProfile prof =
      sample_ellipticity(b.G, {-1, -1, 1, 1}, 0.125, {1e-2, 1e-3}, 16);
  auto bad = detect_bad_set(prof, 0.05, 20.0);
  REQUIRE_FALSE(bad.empty());
  // Every component center lies near the curve F(S^1).
  for (const auto& comp : bad) {
    double best = 1e30;
    for (int k = 0; k < 720; ++k) {
      Complex Fz = b.F(std::polar(1.0, 2 * M_PI * k / 720.0));
      best = std::min(best, (comp.center - PlaneVec{Fz.real(), Fz.imag()}).norm());
    }
    CHECK(best < 0.2);
  }
}

TEST_CASE("covering certificate for the identity") {
  MonotoneField id = make(FieldKind::identity);
  EllipticityProfile prof =
      sample_ellipticity(id, {-2.5, -2.5, 2.5, 2.5}, 0.125, {0.1, 0.01});
  CoveringCertificate cert = build_covering(prof, 1.0, 0.2, 1.0, 1.0, {});
  CHECK(cert.eta > 0.0);
  CHECK(cert.eta < cert.r);
  CHECK(cert.grid_points_checked > 0);
}

TEST_CASE("covering for the 4-Laplacian needs the origin ball") {
  MonotoneField p4 = plap(4.0);
  EllipticityProfile prof =
      sample_ellipticity(p4, {-2.5, -2.5, 2.5, 2.5}, 0.125, {0.5, 0.1});

  CHECK_THROWS_AS(
      (void)build_covering(prof, 1.0, 0.2, 0.5, 0.1, {}), CoveringFailure);
  try {
    (void)build_covering(prof, 1.0, 0.2, 0.5, 0.1, {});
  } catch (const CoveringFailure& e) {
    bool origin_uncovered = false;
    for (PlaneVec p : e.uncovered)
      origin_uncovered = origin_uncovered || p.norm() < 0.2;
    CHECK(origin_uncovered);
  }

  CoveringCertificate cert =
      build_covering(prof, 1.0, 0.2, 0.02, 5.0, {PlaneVec{0, 0}});
  CHECK(cert.eta > 0.0);
  CHECK(cert.bad_centers.size() == 1);

  // 4r separation is a hypothesis, not a fixable condition.
  CHECK_THROWS_AS((void)build_covering(prof, 1.0, 0.2, 0.02, 5.0,
                                       {PlaneVec{0, 0}, PlaneVec{0.3, 0}}),
                  std::invalid_argument);
}

TEST_CASE("certified radius chain structure") {
  CoveringCertificate cov;
  cov.M = 1;
  cov.r = 0.2;
  cov.lambda = 1;
  cov.Lambda = 1;
  cov.eta = 0.1;
  RadiusCertificate rc = certified_radius(cov, 1.0, 1.0, 1.0, 1.0, 0.025);
  CHECK(rc.K == 100);
  CHECK(rc.C_O == doctest::Approx(1.0));
  CHECK(rc.C_V == doctest::Approx(1.0));
  CHECK(rc.log10_delta_final ==
        doctest::Approx(rc.K * rc.log10_delta_single).epsilon(1e-12));
  CHECK(rc.delta_single >= 0.0);

  // Monotone in eta (both through delta_single and through K).
  CoveringCertificate cov2 = cov;
  cov2.eta = 0.2;
  RadiusCertificate rc2 = certified_radius(cov2, 1.0, 1.0, 1.0, 1.0, 0.025);
  CHECK(rc2.log10_delta_final > rc.log10_delta_final);

  CHECK_THROWS_AS((void)certified_radius(cov, 1.0, 1.0, 1.0, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("stilde inclusion audit is empty on the catalog") {
  for (const MonotoneField& f :
       {make(FieldKind::identity), plap(4.0), make(FieldKind::g0_cubic),
        rotational(0.5)}) {
    auto rows = stilde_inclusion_audit(f, {-1, -1, 1, 1}, {0.1, 0.01});
    for (const auto& r : rows) CHECK_FALSE(r.violates_inclusion);
  }
}

TEST_CASE("gradient separable fields couple the two degeneracy notions") {
  // For a gradient field S-degenerate sample points are S-tilde flagged too:
  // the symmetric quotient and the full difference quotient coincide.
  MonotoneField sep =
      separable(ProfileSpec::Kind::cubic, ProfileSpec::Kind::linear);
  REQUIRE(sep.is_gradient);
  auto rows = stilde_inclusion_audit(sep, {-1, -1, 1, 1}, {0.1, 0.01});
  for (const auto& r : rows) CHECK_FALSE(r.violates_inclusion);
}

TEST_CASE("Lipschitz on V regions") {
  // Where Lambda_hat <= Lambda uniformly, difference quotients obey the
  // Lambda Lipschitz bound.
  MonotoneField p4 = plap(4.0);
  EllipticityProfile prof =
      sample_ellipticity(p4, {-1, -1, 1, 1}, 0.25, {0.1, 0.01});
  double Lambda = 4.0;
  for (const auto& c : prof.cells) {
    if (c.Lambda_hat > Lambda) continue;
    for (int d = 0; d < 8; ++d) {
      double th = M_PI * d / 8;
      PlaneVec z{0.05 * std::cos(th), 0.05 * std::sin(th)};
      double quot = (p4(c.center + z) - p4(c.center)).norm() / z.norm();
      CHECK(quot <= Lambda * 1.2);
    }
  }
}
