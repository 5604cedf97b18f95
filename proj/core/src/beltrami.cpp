#include "mono2d/beltrami.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "mono2d/smooth.hpp"

namespace mono2d {

namespace {

constexpr double kDenomGuard = 1e-28;

Complex conj_c(Complex z) { return std::conj(z); }

// Invert a strictly monotone complex map at `target`, preferring a caller
// supplied asymptotic initial guess and falling back to a grid scan.
PlaneVec invert_monotone(const MonotoneField& field, PlaneVec target,
                         double tol, Complex init, InvertOptions opts) {
  InvertOptions warm = opts;
  warm.warm_start = true;
  warm.init = to_vec(init);
  try {
    return invert_field(field, target, tol, warm).preimage;
  } catch (const InversionFailure&) {
    InvertOptions scan = opts;
    scan.warm_start = false;
    scan.box_radius = std::max(opts.box_radius, 4.0 * target.norm() + 2.0);
    return invert_field(field, target, tol, scan).preimage;
  }
}

}  // namespace

BeltramiQuotient beltrami_quotient(const LipschitzMap& H, Complex base,
                                   Complex offset) {
  if (std::norm(offset) == 0.0)
    throw std::invalid_argument("beltrami_quotient: offset must be nonzero");
  BeltramiQuotient q;
  q.base = base;
  q.offset = offset;
  q.L = (H(base + offset) - H(base)) / std::conj(offset);
  double one_minus = 1.0 - std::norm(q.L);
  double dp = std::norm(1.0 + q.L);
  double dm = std::norm(1.0 - q.L);
  q.gamma_plus = dp < kDenomGuard ? kQuotientInf : one_minus / dp;
  q.gamma_minus = dm < kDenomGuard ? kQuotientInf : one_minus / dm;
  return q;
}

GammaScan gamma_classify(const LipschitzMap& H, Complex base,
                         const std::vector<double>& offset_scales,
                         int directions) {
  GammaScan scan;
  scan.base = base;
  scan.scales = offset_scales;
  for (double s : offset_scales) {
    if (!(s > 0.0))
      throw std::invalid_argument("gamma_classify: scales must be positive");
    double mp = kQuotientInf, mm = kQuotientInf;
    for (int k = 0; k < directions; ++k) {
      double th = 2.0 * M_PI * k / directions;
      auto q = beltrami_quotient(H, base, std::polar(s, th));
      mp = std::min(mp, q.gamma_plus);
      mm = std::min(mm, q.gamma_minus);
    }
    scan.min_gamma_plus.push_back(mp);
    scan.min_gamma_minus.push_back(mm);
  }
  auto trending = [](const std::vector<double>& v) {
    if (v.size() < 2) return false;
    // Collapsed at the finest scale, and either already collapsed at the
    // coarsest or decreased by a factor of four across the scan.
    return v.back() <= 0.05 &&
           (v.front() <= 0.05 || v.back() <= 0.25 * v.front());
  };
  scan.plus_trending_zero = trending(scan.min_gamma_plus);
  scan.minus_trending_zero = trending(scan.min_gamma_minus);
  return scan;
}

MintyForwardResult minty_forward(const MonotoneField& field, double tol,
                                 InvertOptions opts) {
  // psi(xi) = xi + G(xi) is strictly monotone; phi is its conjugate.
  MonotoneField psi;
  psi.spec.kind = FieldKind::composite;
  psi.spec.label = "minty_psi(" + field.spec.label + ")";
  psi.evaluate = [field](PlaneVec v) { return v + field(v); };

  MintyForwardResult out;
  out.phi = [field](PlaneVec xi) {
    return std::conj(to_complex(xi + field(xi)));
  };
  out.H.provenance = LipschitzMap::Provenance::minty_forward;
  out.H.label = "minty(" + field.spec.label + ")";
  out.H.evaluate = [field, psi, tol, opts](Complex z) -> Complex {
    PlaneVec target = to_vec(std::conj(z));
    // psi ~ (1 + G) xi; half the target is a serviceable first guess.
    PlaneVec xi = invert_monotone(psi, target, tol, 0.5 * std::conj(z), opts);
    return to_complex(xi - field(xi));
  };
  return out;
}

MintyBackwardResult minty_backward(const LipschitzMap& H_in, double tol,
                                   InvertOptions opts, double modify_outside) {
  LipschitzMap H = H_in;
  if (modify_outside > 0.0) {
    double R = modify_outside;
    auto inner = H_in.evaluate;
    // Radial compression Phi(z) = chi(|z|) z, identity on B_R, 1-Lipschitz
    // (band width chosen so |r chi'(r)| <= 1), vanishing past 8R.
    H.evaluate = [inner, R](Complex z) -> Complex {
      double r = std::abs(z);
      double chi = falloff(r, R, 8.0 * R);
      return inner(chi * z);
    };
    H.label = H_in.label + "+compactified";
  }

  MintyBackwardResult out;
  out.F = [H](Complex z) { return 0.5 * (H(z) + std::conj(z)); };
  out.F_star = [H](Complex z) {
    return (H(z) - std::conj(z)) / Complex(0.0, 2.0);
  };

  // conj(F) and i conj(F*) are strictly monotone; inversion goes through them.
  MonotoneField Fbar;
  Fbar.spec.kind = FieldKind::composite;
  Fbar.spec.label = "conj_F(" + H.label + ")";
  auto F = out.F;
  Fbar.evaluate = [F](PlaneVec z) {
    return to_vec(std::conj(F(to_complex(z))));
  };

  MonotoneField iFsbar;
  iFsbar.spec.kind = FieldKind::composite;
  iFsbar.spec.label = "i_conj_Fstar(" + H.label + ")";
  auto Fs = out.F_star;
  iFsbar.evaluate = [Fs](PlaneVec z) {
    return to_vec(Complex(0.0, 1.0) * std::conj(Fs(to_complex(z))));
  };

  out.G.spec.kind = FieldKind::composite;
  out.G.spec.label = "minty_G(" + H.label + ")";
  out.G.smoothness_note = "monotone field of a Beltrami datum";
  out.G.evaluate = [Fbar, Fs, tol, opts](PlaneVec w) -> PlaneVec {
    Complex wc = to_complex(w);
    // F(z) = w, asymptotically z ~ conj(2w).
    PlaneVec z =
        invert_monotone(Fbar, to_vec(std::conj(wc)), tol, std::conj(2.0 * wc), opts);
    return to_vec(-Complex(0.0, 1.0) * Fs(to_complex(z)));
  };

  out.G_star.spec.kind = FieldKind::composite;
  out.G_star.spec.label = "minty_Gstar(" + H.label + ")";
  out.G_star.smoothness_note = "dual monotone field of a Beltrami datum";
  out.G_star.evaluate = [iFsbar, F, tol, opts](PlaneVec w) -> PlaneVec {
    Complex wc = to_complex(w);
    // F*(z) = w, asymptotically z ~ 2 i conj(w).
    PlaneVec z = invert_monotone(iFsbar, to_vec(Complex(0.0, 1.0) * std::conj(wc)),
                                 tol, 2.0 * Complex(0.0, 1.0) * std::conj(wc), opts);
    return to_vec(Complex(0.0, 1.0) * F(to_complex(z)));
  };
  return out;
}

LinearBeltramiVerdict linear_analyze(Complex mu, Complex nu) {
  double budget = std::abs(mu) + std::abs(nu);
  if (std::abs(budget - 1.0) > 1e-12)
    throw std::invalid_argument("linear_analyze requires |mu| + |nu| = 1");

  LinearBeltramiVerdict v;
  v.mu = mu;
  v.nu = nu;

  // Affine f with gradient (ux, uy) + i (vx, vy). With
  // f_z = ((ux + vy) + i (vx - uy)) / 2, f_zbar = ((ux - vy) + i (vx + uy)) / 2,
  // the equation f_zbar = mu f_z + nu conj(f_z) is a 2x4 real linear system.
  Eigen::Matrix<double, 2, 4> A;
  auto column = [&](int j) {
    double ux = j == 0, uy = j == 1, vx = j == 2, vy = j == 3;
    Complex fz(0.5 * (ux + vy), 0.5 * (vx - uy));
    Complex fzb(0.5 * (ux - vy), 0.5 * (vx + uy));
    Complex e = fzb - mu * fz - nu * std::conj(fz);
    A(0, j) = e.real();
    A(1, j) = e.imag();
  };
  for (int j = 0; j < 4; ++j) column(j);

  Eigen::FullPivLU<Eigen::Matrix<double, 2, 4>> lu(A);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd ker = lu.kernel();

  auto nonconstant_both = [](const Eigen::Vector4d& s) {
    double un = std::hypot(s(0), s(1)), vn = std::hypot(s(2), s(3));
    double n = s.norm();
    return n > 0 && un > 1e-8 * n && vn > 1e-8 * n;
  };

  std::vector<Eigen::Vector4d> candidates;
  for (int i = 0; i < ker.cols(); ++i) candidates.push_back(ker.col(i));
  for (int i = 0; i < ker.cols(); ++i)
    for (int j = i + 1; j < ker.cols(); ++j) {
      candidates.push_back(ker.col(i) + ker.col(j));
      candidates.push_back(ker.col(i) - ker.col(j));
    }

  for (const auto& c : candidates) {
    if (!nonconstant_both(c)) continue;
    Eigen::Vector4d s = c / c.norm();
    v.forces_constancy = false;
    v.constant_part = LinearBeltramiVerdict::ConstantPart::none;
    v.ux = s(0); v.uy = s(1); v.vx = s(2); v.vy = s(3);
    Eigen::Vector2d r = A * s;
    v.residual = r.norm();
    return v;
  }

  v.forces_constancy = true;
  double umax = 0.0, vmax = 0.0;
  for (int i = 0; i < ker.cols(); ++i) {
    umax = std::max(umax, std::hypot(ker(0, i), ker(1, i)));
    vmax = std::max(vmax, std::hypot(ker(2, i), ker(3, i)));
  }
  v.constant_part = vmax <= 1e-8 ? LinearBeltramiVerdict::ConstantPart::im
                                 : LinearBeltramiVerdict::ConstantPart::re;
  return v;
}

CounterexampleBundle build_counterexample() {
  CounterexampleBundle b;

  // Decay rate keeps |g(r)|/r well below 1 away from r=1 so that interior
  // points of the disc keep both gammas above 0.2.
  constexpr double kDecay = 3.0;
  b.g = [](double r) {
    return r * std::exp(-kDecay * (r - 1.0) * (r - 1.0)) * falloff(r, 2.2, 3.0);
  };
  b.dg = [](double r) {
    double e = std::exp(-kDecay * (r - 1.0) * (r - 1.0));
    double chi = falloff(r, 2.2, 3.0);
    double dchi = falloff_deriv(r, 2.2, 3.0);
    return e * (1.0 - 2.0 * kDecay * r * (r - 1.0)) * chi + r * e * dchi;
  };

  // Build-time audit of the radial profile constraints.
  {
    if (std::abs(b.g(1.0) - 1.0) > 1e-14 || std::abs(b.dg(1.0) - 1.0) > 1e-12)
      throw std::logic_error("counterexample profile: g(1) or g'(1) audit failed");
    const int n = 100000;
    for (int i = 1; i <= n; ++i) {
      double r = 4.0 * i / n;
      if (r == 1.0) continue;
      if (!(std::abs(b.g(r)) < r) || !(std::abs(b.dg(r)) < 3.0))
        throw std::logic_error(
            "counterexample profile: constraint audit failed at r=" +
            std::to_string(r));
    }
  }

  auto g = b.g;
  b.H.provenance = LipschitzMap::Provenance::explicit_s6;
  b.H.label = "s6";
  b.H.evaluate = [g](Complex z) -> Complex {
    double r = std::abs(z);
    if (r < 1e-300) return {0.0, 0.0};
    Complex dir = z / r;
    return g(r) * dir * dir * dir / 3.0;
  };

  b.f = [](Complex z) -> Complex {
    double r = std::abs(z);
    if (r < 1e-300) return {0.0, 0.0};
    // (2/3) r i e^{2 i theta}
    return (2.0 / 3.0) * Complex(0.0, 1.0) * z * z / r;
  };
  b.u = [](PlaneVec p) -> double {
    double r = p.norm();
    if (r < 1e-300) return 0.0;
    return -(2.0 * p.x * p.y) / (3.0 * r);  // -(r/3) sin(2 theta)
  };

  auto back = minty_backward(b.H, 1e-10);
  b.G = back.G;
  b.G.spec.kind = FieldKind::counterexample_s6;
  b.G.spec.label = "counterexample_s6";
  b.F = back.F;
  return b;
}

MonotoneField counterexample_field() { return build_counterexample().G; }

std::vector<StildeAuditRow> counterexample_stilde_audit(
    const CounterexampleBundle& bundle, const std::vector<double>& thetas,
    double scale, int directions) {
  std::vector<StildeAuditRow> rows;
  rows.reserve(thetas.size());
  for (double th : thetas) {
    StildeAuditRow row;
    row.theta = th;
    double s2 = std::sin(2.0 * th);
    row.closed_form = s2 == 0.0 ? kQuotientInf : 2.0 / (s2 * s2);
    PlaneVec base = to_vec(bundle.F(std::polar(1.0, th)));
    double mx = 0.0;
    for (int k = 0; k < directions; ++k) {
      double a = 2.0 * M_PI * k / directions;
      auto q = quotient_sample(bundle.G, base, {scale * std::cos(a), scale * std::sin(a)});
      mx = std::max(mx, q.q_lower);
    }
    row.max_symmetric_quotient = mx;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mono2d
