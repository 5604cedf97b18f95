#include "mono2d/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "mono2d/smooth.hpp"

namespace mono2d {

namespace {

struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;  // [[a, b], [c, d]]
  PlaneVec apply(PlaneVec v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  PlaneVec apply_t(PlaneVec v) const { return {a * v.x + c * v.y, b * v.x + d * v.y}; }
  double det() const { return a * d - b * c; }
  PlaneVec solve(PlaneVec rhs) const {
    double dt = det();
    return {(d * rhs.x - b * rhs.y) / dt, (-c * rhs.x + a * rhs.y) / dt};
  }
};

Mat2 fd_jacobian(const MonotoneField& field, PlaneVec at) {
  double h = 1e-6 * (1.0 + at.norm());
  PlaneVec gx = (field({at.x + h, at.y}) - field({at.x - h, at.y})) / (2 * h);
  PlaneVec gy = (field({at.x, at.y + h}) - field({at.x, at.y - h})) / (2 * h);
  return {gx.x, gy.x, gx.y, gy.y};
}

}  // namespace

InversionResult invert_field(const MonotoneField& field, PlaneVec target,
                             double tol, const InvertOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("invert_field: tol must be > 0");

  auto descend = [&](PlaneVec start) -> InversionResult {
    PlaneVec xi = start;
    PlaneVec res = field(xi) - target;
    double m = res.norm2();
    int it = 0;
    for (; it < opts.max_iterations && std::sqrt(m) > tol; ++it) {
      Mat2 J = fd_jacobian(field, xi);
      PlaneVec dir;
      bool have_newton = std::abs(J.det()) > 1e-30;
      if (have_newton) dir = -1.0 * J.solve(res);

      // Armijo backtracking on m(xi) = |G(xi) - target|^2; gradient 2 J^T res.
      PlaneVec grad = 2.0 * J.apply_t(res);
      auto try_dir = [&](PlaneVec d) -> bool {
        double slope = dot(grad, d);
        if (slope >= 0.0) return false;
        double step = 1.0;
        for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
          PlaneVec cand = xi + step * d;
          double mc = (field(cand) - target).norm2();
          if (mc <= m + 1e-4 * step * slope) {
            xi = cand;
            m = mc;
            return true;
          }
        }
        return false;
      };

      bool moved = have_newton && try_dir(dir);
      if (!moved) moved = try_dir(-1.0 * grad);
      if (!moved) break;  // stagnation, neither direction decreases
      res = field(xi) - target;
      m = res.norm2();
    }
    return {xi, std::sqrt(m), it};
  };

  InversionResult out;
  if (opts.warm_start) {
    out = descend(opts.init);
  } else {
    // Ranked seeds: Newton can stall from the single best one (a seed at a
    // point with a degenerate Jacobian decreases in no direction), so keep
    // a few and try them in residual order.
    const int kSeeds = 5;
    std::vector<std::pair<double, PlaneVec>> seeds;
    double R = opts.box_radius;
    int n = opts.grid;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        PlaneVec cand{-R + 2.0 * R * i / (n - 1), -R + 2.0 * R * j / (n - 1)};
        seeds.emplace_back((field(cand) - target).norm2(), cand);
      }
    }
    int keep = std::min<int>(kSeeds, (int)seeds.size());
    std::partial_sort(seeds.begin(), seeds.begin() + keep, seeds.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
    out.residual = std::numeric_limits<double>::infinity();
    for (int k = 0; k < keep; ++k) {
      InversionResult r = descend(seeds[k].second);
      if (r.residual < out.residual) out = r;
      if (out.residual <= tol) break;
    }
  }
  if (out.residual > tol) {
    std::ostringstream msg;
    msg << "invert_field: no convergence after " << out.iterations
        << " iterations, best residual " << out.residual
        << " (field may not be coercive on the search box; consider "
           "modify_at_infinity first)";
    throw InversionFailure(msg.str(), out);
  }
  return out;
}

MonotoneField dual_field(const MonotoneField& field, double tol,
                         const InvertOptions& opts) {
  MonotoneField dual;
  dual.spec.kind = FieldKind::composite;
  dual.spec.label = "dual(" + field.spec.label + ")";
  dual.is_gradient = field.is_gradient;
  dual.smoothness_note = "dual of: " + field.smoothness_note;
  dual.evaluate = [field, tol, opts](PlaneVec xi) -> PlaneVec {
    // G*(xi) = i G^{-1}(-i xi)
    PlaneVec target = -1.0 * xi.rot90();  // -i xi
    InversionResult inv = invert_field(field, target, tol, opts);
    return inv.preimage.rot90();
  };
  return dual;
}

std::pair<MonotoneField, CutoffSpec> modify_at_infinity(
    const MonotoneField& field, double M) {
  if (!(M > 0.0)) throw std::invalid_argument("modify_at_infinity: M must be > 0");

  // Sampled sup of |G| over B_4M.
  double sup = 0.0;
  const int nr = 64, na = 128;
  for (int i = 1; i <= nr; ++i) {
    double r = 4.0 * M * i / nr;
    for (int j = 0; j < na; ++j) {
      double th = 2.0 * M_PI * j / na;
      sup = std::max(sup, field({r * std::cos(th), r * std::sin(th)}).norm());
    }
  }
  sup = std::max(sup, field({0, 0}).norm());

  CutoffSpec cut;
  cut.M = M;
  cut.sup_G = sup;
  cut.c = 2.0 * sup / M;
  cut.L = 2.0 * cut.c + 2.0 * cut.c * M + sup;

  double c = cut.c;
  MonotoneField out;
  out.spec.kind = FieldKind::composite;
  out.spec.label = "modify(" + field.spec.label + ", M=" + std::to_string(M) + ")";
  out.is_gradient = false;
  out.smoothness_note = "cutoff modification, smooth quadratic outside B_4M";
  out.evaluate = [field, M, c](PlaneVec xi) -> PlaneVec {
    double r = xi.norm();
    // eta: 1 on B_2M, 0 outside B_4M, |eta'| <= 3/(4M) <= 1/M
    double eta = falloff(r, 2.0 * M, 4.0 * M);
    PlaneVec v = (eta > 0.0) ? eta * field(xi) : PlaneVec{0, 0};
    if (r > M) v += (2.0 * c * (r - M) / r) * xi;  // grad of c (|x|-M)_+^2
    return v;
  };
  return {out, cut};
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

MonotoneField mollify(const MonotoneField& field, const MollifierSpec& spec) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0))
    throw std::invalid_argument("mollify: epsilon must be in (0, 1)");
  if (spec.kernel_order < 2)
    throw std::invalid_argument("mollify: kernel_order must be >= 2");

  std::vector<double> xs, ws;
  gauss_legendre(spec.kernel_order, xs, ws);

  // Tensor quadrature of the unit-ball bump exp(-1/(1-|x|^2)), normalized
  // so that the kernel has unit mass under this exact rule.
  struct Node { PlaneVec u; double w; };
  auto nodes = std::make_shared<std::vector<Node>>();
  double mass = 0.0;
  for (int i = 0; i < spec.kernel_order; ++i) {
    for (int j = 0; j < spec.kernel_order; ++j) {
      PlaneVec u{xs[i], xs[j]};
      double r2 = u.norm2();
      if (r2 >= 1.0) continue;
      double w = ws[i] * ws[j] * std::exp(-1.0 / (1.0 - r2));
      nodes->push_back({u, w});
      mass += w;
    }
  }
  for (auto& n : *nodes) n.w /= mass;

  double eps = spec.epsilon;
  MonotoneField out;
  out.spec.kind = FieldKind::composite;
  out.spec.label =
      "mollify(" + field.spec.label + ", eps=" + std::to_string(eps) + ")";
  out.is_gradient = field.is_gradient;
  out.smoothness_note = "mollified, strongly monotone";
  out.evaluate = [field, nodes, eps](PlaneVec xi) -> PlaneVec {
    PlaneVec acc{0, 0};
    for (const auto& n : *nodes) acc += n.w * field(xi - eps * n.u);
    return acc + eps * xi;
  };
  if (field.potential) {
    auto pot = field.potential;
    out.potential = [pot, nodes, eps](PlaneVec xi) {
      double acc = 0.0;
      for (const auto& n : *nodes) acc += n.w * pot(xi - eps * n.u);
      return acc + 0.5 * eps * xi.norm2();
    };
  }
  return out;
}

}  // namespace mono2d
