#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "mono2d/field.hpp"
#include "mono2d/transforms.hpp"

namespace mono2d {

using Complex = std::complex<double>;

/// Strictly 1-Lipschitz complex map (the Beltrami datum).
struct LipschitzMap {
  enum class Provenance { catalog, minty_forward, explicit_s6 };
  Provenance provenance = Provenance::catalog;
  std::function<Complex(Complex)> evaluate;
  std::string label;

  Complex operator()(Complex z) const { return evaluate(z); }
};

/// Difference quotient L_H(base, offset) = (H(base+offset) - H(base)) / conj(offset)
/// and the two ellipticity gammas (1 - |L|^2) / |1 +- L|^2.
struct BeltramiQuotient {
  Complex base;
  Complex offset;
  Complex L;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
};

BeltramiQuotient beltrami_quotient(const LipschitzMap& H, Complex base,
                                   Complex offset);

/// Scale-resolved minima of the gammas at one base point.
struct GammaScan {
  Complex base;
  std::vector<double> scales;
  std::vector<double> min_gamma_plus;   // min over directions, per scale
  std::vector<double> min_gamma_minus;
  bool plus_trending_zero = false;
  bool minus_trending_zero = false;
};

GammaScan gamma_classify(const LipschitzMap& H, Complex base,
                         const std::vector<double>& offset_scales,
                         int directions = 32);

struct MintyForwardResult {
  LipschitzMap H;
  /// The homeomorphism phi with H(phi(xi)) known in closed form;
  /// phi(xi) = conj(xi + G(xi)).
  std::function<Complex(PlaneVec)> phi;
};

/// Monotone field -> strictly 1-Lipschitz Beltrami datum. Evaluating H at
/// arbitrary points inverts phi through the duality machinery.
MintyForwardResult minty_forward(const MonotoneField& field, double tol = 1e-10,
                                 InvertOptions opts = {});

struct MintyBackwardResult {
  MonotoneField G;
  MonotoneField G_star;
  std::function<Complex(Complex)> F;       // (H(z) + conj z) / 2
  std::function<Complex(Complex)> F_star;  // (H(z) - conj z) / (2i)
};

/// Beltrami datum -> monotone field pair via F, F*. When modify_outside > 0,
/// H is first composed with the radial compression chi(|z|) z equal to the
/// identity on B_{modify_outside}.
MintyBackwardResult minty_backward(const LipschitzMap& H, double tol = 1e-10,
                                   InvertOptions opts = {},
                                   double modify_outside = 0.0);

struct LinearBeltramiVerdict {
  Complex mu, nu;
  bool forces_constancy = false;
  enum class ConstantPart { re, im, none };
  ConstantPart constant_part = ConstantPart::none;
  /// Affine counterexample f with gradient (ux, uy) + i (vx, vy);
  /// meaningful iff forces_constancy is false.
  double ux = 0, uy = 0, vx = 0, vy = 0;
  double residual = 0.0;  // |f_zbar - mu f_z - nu conj(f_z)|
};

/// Dichotomy for the degenerate linear equation f_zbar = mu f_z + nu conj(f_z)
/// with |mu| + |nu| = 1: constancy of one component is forced iff
/// (mu, nu) = (0, +-1); otherwise an explicit affine counterexample exists.
LinearBeltramiVerdict linear_analyze(Complex mu, Complex nu);

/// The explicit non-C1 construction: H equal to z^3/3 on the unit circle,
/// contractive elsewhere, with the closed-form solution pair (f, u) and the
/// induced monotone field G.
struct CounterexampleBundle {
  std::function<double(double)> g;   // radial profile
  std::function<double(double)> dg;  // its derivative
  LipschitzMap H;
  std::function<Complex(Complex)> f;      // (2/3) r i e^{2 i theta}
  std::function<double(PlaneVec)> u;      // -(r/3) sin(2 theta)
  MonotoneField G;
  std::function<Complex(Complex)> F;      // transport map of the bundle
};

CounterexampleBundle build_counterexample();

/// Catalog hook: the monotone field of the counterexample bundle.
MonotoneField counterexample_field();

struct StildeAuditRow {
  double theta = 0.0;
  double max_symmetric_quotient = 0.0;  // max over a direction scan of q_lower
  double closed_form = 0.0;             // 2 / sin^2(2 theta)
};

/// Samples the symmetric-part quotient of the bundle field near F(e^{i theta}).
std::vector<StildeAuditRow> counterexample_stilde_audit(
    const CounterexampleBundle& bundle, const std::vector<double>& thetas,
    double scale = 1e-3, int directions = 64);

}  // namespace mono2d
