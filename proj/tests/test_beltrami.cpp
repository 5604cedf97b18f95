#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "helpers.hpp"
#include "mono2d/beltrami.hpp"

using namespace mono2d;
using testing::make;
using testing::plap;

namespace {

LipschitzMap zero_map() {
  LipschitzMap H;
  H.label = "zero";
  H.evaluate = [](Complex) { return Complex{0, 0}; };
  return H;
}

InvertOptions fast_opts() {
  InvertOptions o;
  o.box_radius = 6.0;
  o.grid = 7;
  return o;
}

}  // namespace

TEST_CASE("beltrami quotient basics") {
  LipschitzMap H = zero_map();
  BeltramiQuotient q = beltrami_quotient(H, {0.3, 0.1}, {0.01, 0.0});
  CHECK(std::abs(q.L) == 0.0);
  CHECK(q.gamma_plus == doctest::Approx(1.0));
  CHECK(q.gamma_minus == doctest::Approx(1.0));
}

TEST_CASE("linear dichotomy") {
  LinearBeltramiVerdict v1 = linear_analyze({0, 0}, {1, 0});
  CHECK(v1.forces_constancy);
  CHECK(v1.constant_part == LinearBeltramiVerdict::ConstantPart::im);

  LinearBeltramiVerdict v2 = linear_analyze({0, 0}, {-1, 0});
  CHECK(v2.forces_constancy);
  CHECK(v2.constant_part == LinearBeltramiVerdict::ConstantPart::re);

  LinearBeltramiVerdict v3 = linear_analyze({1, 0}, {0, 0});
  CHECK_FALSE(v3.forces_constancy);
  CHECK(v3.residual <= 1e-12);
  CHECK(std::abs(v3.ux) + std::abs(v3.uy) + std::abs(v3.vx) + std::abs(v3.vy) >
        1e-6);

  CHECK_THROWS_AS((void)linear_analyze({0.8, 0}, {0.8, 0}),
                  std::invalid_argument);
}

TEST_CASE("minty forward of the identity is the zero map") {
  MonotoneField id = make(FieldKind::identity);
  MintyForwardResult fw = minty_forward(id, 1e-10, fast_opts());
  for (Complex z : {Complex{0.5, 0.2}, Complex{-1.0, 0.7}}) {
    CHECK(std::abs(fw.H(z)) < 1e-8);
  }
  // phi(xi) = conj(xi + G(xi)) = conj(2 xi)
  Complex p = fw.phi({0.3, -0.4});
  CHECK(std::abs(p - Complex{0.6, 0.8}) < 1e-12);
}

TEST_CASE("minty forward p-Laplacian quotient formula") {
  double p = 4.0;
  MonotoneField p4 = plap(p);
  MintyForwardResult fw = minty_forward(p4, 1e-10, fast_opts());
  Complex h0 = fw.H(fw.phi({0, 0}));
  CHECK(std::abs(h0) < 1e-9);
  std::mt19937_64 rng(0x99);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 20; ++i) {
    Complex z{u(rng), u(rng)};
    if (std::abs(z) < 0.05) continue;
    Complex w = fw.phi({z.real(), z.imag()});
    Complex quotient = (fw.H(w) - h0) / std::conj(w);
    double expect = (1.0 - std::pow(std::abs(z), p - 2)) /
                    (1.0 + std::pow(std::abs(z), p - 2));
    CHECK(std::abs(quotient - expect) < 1e-6);
  }
}

TEST_CASE("minty backward of the zero map is the identity field") {
  MintyBackwardResult bw = minty_backward(zero_map(), 1e-10, fast_opts());
  for (PlaneVec xi : {PlaneVec{0.4, 0.1}, PlaneVec{-1.1, 0.8}}) {
    CHECK((bw.G(xi) - xi).norm() < 1e-8);
  }
}

TEST_CASE("correspondence identities of F and F*") {
  CounterexampleBundle b = build_counterexample();
  MintyBackwardResult bw = minty_backward(b.H, 1e-10, fast_opts());
  for (Complex z : {Complex{0.5, 0.3}, Complex{1.2, -0.4}, Complex{-0.2, 0.9}}) {
    Complex F = bw.F(z), Fs = bw.F_star(z);
    CHECK(std::abs(F + Complex{0, 1} * Fs - b.H(z)) < 1e-13);
    CHECK(std::abs(F - Complex{0, 1} * Fs - std::conj(z)) < 1e-13);
  }
}

TEST_CASE("minty round trip on the identity") {
  MonotoneField id = make(FieldKind::identity);
  MintyForwardResult fw = minty_forward(id, 1e-10, fast_opts());
  MintyBackwardResult bw = minty_backward(fw.H, 1e-10, fast_opts());
  for (PlaneVec xi : {PlaneVec{0.7, -0.2}, PlaneVec{-1.3, 0.5}}) {
    CHECK((bw.G(xi) - id(xi)).norm() < 1e-6);
  }
}

TEST_CASE("counterexample bundle closed forms") {
  CounterexampleBundle b = build_counterexample();
  CHECK(b.g(1.0) == 1.0);
  double h = 1e-6;
  CHECK((b.g(1.0 + h) - b.g(1.0 - h)) / (2 * h) == doctest::Approx(1.0).epsilon(1e-6));

  // H restricted to the unit circle is z^3 / 3.
  for (double th : {0.3, 1.1, 2.9}) {
    Complex z = std::polar(1.0, th);
    CHECK(std::abs(b.H(z) - z * z * z / 3.0) < 1e-13);
  }
  CHECK(std::abs(b.H(Complex{0, 0})) == 0.0);

  // u is half the real part of f, with the explicit polar formula.
  for (double r : {0.2, 0.8, 1.0}) {
    for (double th : {0.5, 2.0}) {
      Complex z = std::polar(r, th);
      double u = b.u({z.real(), z.imag()});
      CHECK(u == doctest::Approx(-(r / 3.0) * std::sin(2 * th)).epsilon(1e-12));
      CHECK(u == doctest::Approx(0.5 * b.f(z).real()).epsilon(1e-12));
    }
  }

  // |f_z| = 1 by finite differences away from the origin.
  for (double th : {0.4, 1.7}) {
    Complex z = std::polar(0.9, th);
    double d = 1e-6;
    Complex fx = (b.f(z + d) - b.f(z - d)) / (2 * d);
    Complex fy = (b.f(z + Complex{0, d}) - b.f(z - Complex{0, d})) / (2 * d);
    Complex fz = 0.5 * (fx - Complex{0, 1} * fy);
    CHECK(std::abs(std::abs(fz) - 1.0) < 1e-5);
    // f_zbar = (1/3) (f_z)^3
    Complex fzb = 0.5 * (fx + Complex{0, 1} * fy);
    CHECK(std::abs(fzb - fz * fz * fz / 3.0) < 1e-5);
  }
}

TEST_CASE("counterexample gamma collapse on the circle only") {
  CounterexampleBundle b = build_counterexample();
  std::vector<double> scales{1e-1, 1e-2, 1e-3, 1e-4};

  GammaScan on_circle = gamma_classify(b.H, std::polar(1.0, M_PI / 3.0), scales);
  CHECK(on_circle.min_gamma_plus.back() < 0.05);
  CHECK(on_circle.min_gamma_minus.back() < 0.05);
  CHECK(on_circle.plus_trending_zero);
  CHECK(on_circle.minus_trending_zero);

  GammaScan interior = gamma_classify(b.H, Complex{0, 0}, scales);
  CHECK(interior.min_gamma_plus.back() > 0.2);
  CHECK(interior.min_gamma_minus.back() > 0.2);
  CHECK_FALSE(interior.plus_trending_zero);
}

TEST_CASE("counterexample tangential quotient limit") {
  // L -> -e^{4 i theta} for tangential offsets at e^{i theta}.
  CounterexampleBundle b = build_counterexample();
  double th = M_PI / 3.0;
  Complex z = std::polar(1.0, th);
  Complex tangent = Complex{0, 1} * z;
  BeltramiQuotient q = beltrami_quotient(b.H, z, 1e-5 * tangent);
  CHECK(std::abs(q.L - (-std::polar(1.0, 4 * th))) < 1e-3);
}

TEST_CASE("counterexample stilde audit matches the closed form") {
  CounterexampleBundle b = build_counterexample();
  auto rows = counterexample_stilde_audit(
      b, {M_PI / 4.0, M_PI / 3.0, 0.4, 0.2, 0.1});
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].closed_form == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(rows[0].max_symmetric_quotient - 2.0) / 2.0 < 0.10);
  CHECK(std::abs(rows[1].max_symmetric_quotient - 8.0 / 3.0) / (8.0 / 3.0) <
        0.10);
  // Blow-up toward theta -> 0.
  CHECK(rows[2].max_symmetric_quotient < rows[3].max_symmetric_quotient);
  CHECK(rows[3].max_symmetric_quotient < rows[4].max_symmetric_quotient);
  CHECK(rows[4].max_symmetric_quotient > 25.0);
}

TEST_CASE("lipschitz audit on forward maps") {
  MonotoneField g0 = make(FieldKind::g0_cubic);
  MintyForwardResult fw = minty_forward(g0, 1e-9, fast_opts());
  std::mt19937_64 rng(0x5a);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    Complex a{u(rng), u(rng)}, bb{u(rng), u(rng)};
    if (std::abs(a - bb) < 1e-6) continue;
    CHECK(std::abs(fw.H(a) - fw.H(bb)) < std::abs(a - bb) * (1.0 + 1e-7));
  }
}
