#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mono2d/field.hpp"

using namespace mono2d;
using testing::BoxSampler;
using testing::make;
using testing::plap;
using testing::rotational;
using testing::separable;

namespace {

std::vector<MonotoneField> catalog() {
  std::vector<MonotoneField> out;
  out.push_back(make(FieldKind::identity));
  out.push_back(plap(4.0));
  out.push_back(plap(1.5));
  out.push_back(rotational(0.5));
  out.push_back(make(FieldKind::g0_cubic));
  out.push_back(separable(ProfileSpec::Kind::cubic, ProfileSpec::Kind::plateau));
  out.push_back(make(FieldKind::pathological_sin));
  return out;
}

}  // namespace

TEST_CASE("catalog evaluation oracles") {
  MonotoneField g0 = make(FieldKind::g0_cubic);
  PlaneVec v = g0({1, 2});
  CHECK(v.x == -1.0);
  CHECK(v.y == 3.0);

  MonotoneField p2 = plap(2.0);
  for (PlaneVec xi : {PlaneVec{0.3, -0.7}, PlaneVec{2, 1}, PlaneVec{0, 0}}) {
    PlaneVec w = p2(xi);
    CHECK(w.x == doctest::Approx(xi.x).epsilon(1e-14));
    CHECK(w.y == doctest::Approx(xi.y).epsilon(1e-14));
  }

  MonotoneField gm = rotational(0.5);
  PlaneVec r = gm({1, 0});
  CHECK(r.x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.y == doctest::Approx(0.0).epsilon(1e-14));
  PlaneVec origin = gm({0, 0});
  CHECK(origin.x == 0.0);
  CHECK(origin.y == 0.0);
}

TEST_CASE("catalog parameter validation") {
  FieldSpec bad_p;
  bad_p.kind = FieldKind::p_laplacian;
  bad_p.p = 1.0;
  CHECK_THROWS_AS((void)make_catalog_field(bad_p), std::invalid_argument);

  FieldSpec bad_m;
  bad_m.kind = FieldKind::rotational_gm;
  bad_m.m = 0.6;
  CHECK_THROWS_AS((void)make_catalog_field(bad_m), std::invalid_argument);
}

TEST_CASE("evaluation is pure") {
  for (const MonotoneField& f : catalog()) {
    PlaneVec xi{0.37, -1.21};
    PlaneVec a = f(xi), b = f(xi);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
  }
}

TEST_CASE("monotonicity gap oracles") {
  MonotoneField id = make(FieldKind::identity);
  PlaneVec a{1.2, -0.4}, b{0.1, 0.9};
  CHECK(monotonicity_gap(id, a, b) ==
        doctest::Approx((a - b).norm2()).epsilon(1e-14));

  MonotoneField g0 = make(FieldKind::g0_cubic);
  CHECK(monotonicity_gap(g0, {1, 0}, {0, 0}) ==
        doctest::Approx(1.0).epsilon(1e-14));

  MonotoneField p4 = plap(4.0);
  for (double s : {0.3, 1.1}) {
    CHECK(monotonicity_gap(p4, {s, 0}, {-s, 0}) ==
          doctest::Approx(4.0 * s * s * s * s).epsilon(1e-12));
  }
}

TEST_CASE("monotonicity gap positive on seeded pairs") {
  for (const MonotoneField& f : catalog()) {
    BoxSampler sample(5.0);
    for (int i = 0; i < 2000; ++i) {
      PlaneVec a = sample(), b = sample();
      if ((a - b).norm() < 1e-12) continue;
      CHECK(monotonicity_gap(f, a, b) > 0.0);
    }
  }
}

TEST_CASE("quotient sample oracles") {
  MonotoneField id = make(FieldKind::identity);
  QuotientSample q = quotient_sample(id, {0.5, -0.2}, {0.1, 0.07});
  CHECK(q.q_lower == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(q.q_upper_inv == doctest::Approx(1.0).epsilon(1e-10));

  MonotoneField p4 = plap(4.0);
  for (double s : {0.5, 0.1, 0.01}) {
    QuotientSample qs = quotient_sample(p4, {0, 0}, {s, 0});
    CHECK(qs.q_lower == doctest::Approx(s * s).epsilon(1e-10));
  }

  // p < 2: the inverse-type quotient collapses at the origin instead.
  MonotoneField p15 = plap(1.5);
  double prev = 1e30;
  for (double s : {0.5, 0.1, 0.01}) {
    QuotientSample qs = quotient_sample(p15, {0, 0}, {s, 0});
    CHECK(qs.q_upper_inv < prev);
    prev = qs.q_upper_inv;
  }
  CHECK(prev < 0.15);

  CHECK_THROWS_AS((void)quotient_sample(id, {1, 1}, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("Cauchy-Schwarz chain on quotient samples") {
  BoxSampler sample(2.0, 0xabc);
  for (const MonotoneField& f : catalog()) {
    for (int i = 0; i < 300; ++i) {
      PlaneVec base = sample();
      PlaneVec off = 0.05 * sample();
      if (off.norm() < 1e-9) continue;
      QuotientSample q = quotient_sample(f, base, off);
      if (q.q_lower <= 0.0 || q.q_upper_inv == kQuotientInf) continue;
      CHECK(q.q_upper_inv <= (1.0 / q.q_lower) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("modulus of monotony oracles") {
  MonotoneField id = make(FieldKind::identity);
  for (double t : {0.3, 1.0}) {
    double w = modulus_of_monotony(id, t, 3.0, 20000);
    CHECK(w == doctest::Approx(t * t).epsilon(0.02));
  }

  MonotoneField p4 = plap(4.0);
  double t = 0.8;
  double w = modulus_of_monotony(p4, t, 2.0, 100000);
  double exact = t * t * t * t / 4.0;
  CHECK(w >= exact * (1.0 - 1e-9));  // sampled estimate upper-bounds the inf
  CHECK(w <= exact * 1.05);
}

TEST_CASE("modulus of monotony monotone in t and box radius") {
  MonotoneField p4 = plap(4.0);
  double prev = 0.0;
  for (double t : {0.2, 0.4, 0.8, 1.6}) {
    double w = modulus_of_monotony(p4, t, 3.0, 20000);
    CHECK(w >= prev);
    prev = w;
  }
  double small_box = modulus_of_monotony(p4, 0.5, 1.0, 20000);
  double big_box = modulus_of_monotony(p4, 0.5, 4.0, 20000);
  CHECK(big_box <= small_box * (1.0 + 1e-9));

  // The plateau factor is exactly flat on [-1/2, 1/2], so the separable
  // field with a plateau has restricted modulus zero; every strictly
  // monotone catalog entry has a positive one.
  for (const MonotoneField& f : catalog()) {
    double w = modulus_of_monotony(f, 0.5, 2.0, 5000);
    bool has_plateau =
        f.spec.kind == FieldKind::separable &&
        (f.spec.fx.kind == ProfileSpec::Kind::plateau ||
         f.spec.gy.kind == ProfileSpec::Kind::plateau);
    if (has_plateau)
      CHECK(w == 0.0);
    else
      CHECK(w > 0.0);
  }

  CHECK_THROWS_AS((void)modulus_of_monotony(p4, 0.5, 2.0, 0),
                  std::invalid_argument);
}

TEST_CASE("gradient fields have symmetric cross differences") {
  std::vector<MonotoneField> grads;
  grads.push_back(make(FieldKind::identity));
  grads.push_back(plap(4.0));
  grads.push_back(separable(ProfileSpec::Kind::cubic, ProfileSpec::Kind::linear));
  for (const MonotoneField& f : grads) {
    REQUIRE(f.is_gradient);
    PlaneVec base{0.4, -0.3};
    double prev = 1e30;
    for (double s : {1e-2, 1e-3}) {
      PlaneVec z1{s, 0}, z2{0, s};
      double a = dot(f(base + z1) - f(base), z2);
      double b = dot(f(base + z2) - f(base), z1);
      double asym = std::abs(a - b) / (s * s);  // relative to first order
      CHECK(asym < prev + 1e-9);
      prev = asym;
    }
    CHECK(prev < 0.05);
  }
}

TEST_CASE("pathological profile is odd and integrates the right slope") {
  CHECK(pathological_profile(0.0) == 0.0);
  for (double x : {0.3, 0.77, 1.5}) {
    CHECK(pathological_profile(-x) ==
          doctest::Approx(-pathological_profile(x)).epsilon(1e-12));
    double h = 1e-5;
    double slope =
        (pathological_profile(x + h) - pathological_profile(x - h)) / (2 * h);
    double f = std::abs(x) + std::abs(std::sin(1.0 / x));
    CHECK(slope == doctest::Approx(f).epsilon(1e-3));
  }

  MonotoneField path = make(FieldKind::pathological_sin);
  BoxSampler sample(2.0, 0x77);
  for (int i = 0; i < 500; ++i) {
    PlaneVec a = sample(), b = sample();
    if ((a - b).norm() < 1e-10) continue;
    CHECK(monotonicity_gap(path, a, b) > 0.0);
  }
}

TEST_CASE("profile factors match their potentials") {
  for (auto kind : {ProfileSpec::Kind::linear, ProfileSpec::Kind::cubic,
                    ProfileSpec::Kind::plateau, ProfileSpec::Kind::power}) {
    ProfileSpec s;
    s.kind = kind;
    s.param = kind == ProfileSpec::Kind::power ? 3.0 : 1.0;
    CHECK(profile_potential(s, 0.0) == 0.0);
    for (double t : {-1.2, 0.4, 2.0}) {
      double h = 1e-5;
      double slope =
          (profile_potential(s, t + h) - profile_potential(s, t - h)) / (2 * h);
      CHECK(slope == doctest::Approx(profile_eval(s, t)).epsilon(1e-5));
    }
  }
}
