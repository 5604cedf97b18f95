#include "mono2d/fem.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "mono2d/transforms.hpp"

namespace mono2d {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

PlaneVec tri_gradient(const DiscDomain& dom, const Triangle& t,
                      const std::vector<double>& vals) {
  PlaneVec g{0, 0};
  for (int k = 0; k < 3; ++k) g += vals[t.v[k]] * t.grad[k];
  return g;
}

struct Assembler {
  std::shared_ptr<const DiscDomain> dom;
  std::vector<int> eq;  // node -> interior equation index, -1 on boundary
  int n_int = 0;

  explicit Assembler(std::shared_ptr<const DiscDomain> d) : dom(std::move(d)) {
    eq.assign(dom->nodes.size(), -1);
    for (std::size_t i = 0; i < dom->nodes.size(); ++i)
      if (!dom->is_boundary[i]) eq[i] = n_int++;
  }

  Eigen::VectorXd residual(const MonotoneField& field,
                           const std::vector<double>& u) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n_int);
    for (const auto& t : dom->tris) {
      PlaneVec Gv = field(tri_gradient(*dom, t, u));
      for (int k = 0; k < 3; ++k)
        if (eq[t.v[k]] >= 0) r[eq[t.v[k]]] += t.area * dot(Gv, t.grad[k]);
    }
    return r;
  }

  SpMat tangent(const MonotoneField& field, const std::vector<double>& u) const {
    std::vector<Triplet> trips;
    trips.reserve(dom->tris.size() * 9);
    for (const auto& t : dom->tris) {
      PlaneVec g = tri_gradient(*dom, t, u);
      double h = 1e-7 * (1.0 + g.norm());
      PlaneVec jx = (field({g.x + h, g.y}) - field({g.x - h, g.y})) / (2 * h);
      PlaneVec jy = (field({g.x, g.y + h}) - field({g.x, g.y - h})) / (2 * h);
      for (int a = 0; a < 3; ++a) {
        int ia = eq[t.v[a]];
        if (ia < 0) continue;
        for (int b = 0; b < 3; ++b) {
          int ib = eq[t.v[b]];
          if (ib < 0) continue;
          PlaneVec Agb = t.grad[b].x * jx + t.grad[b].y * jy;
          trips.emplace_back(ia, ib, t.area * dot(t.grad[a], Agb));
        }
      }
    }
    SpMat K(n_int, n_int);
    K.setFromTriplets(trips.begin(), trips.end());
    return K;
  }

  SpMat laplacian() const {
    std::vector<Triplet> trips;
    for (const auto& t : dom->tris)
      for (int a = 0; a < 3; ++a) {
        int ia = eq[t.v[a]];
        if (ia < 0) continue;
        for (int b = 0; b < 3; ++b)
          if (eq[t.v[b]] >= 0)
            trips.emplace_back(ia, eq[t.v[b]],
                               t.area * dot(t.grad[a], t.grad[b]));
      }
    SpMat L(n_int, n_int);
    L.setFromTriplets(trips.begin(), trips.end());
    return L;
  }

  void apply_update(std::vector<double>& u, const Eigen::VectorXd& delta,
                    double tau) const {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (eq[i] >= 0) u[i] += tau * delta[eq[i]];
  }
};

double max_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

double energy_of(const MonotoneField& field, const DiscDomain& dom,
                 const std::vector<double>& u) {
  double e = 0.0;
  for (const auto& t : dom.tris)
    e += t.area * field.potential(tri_gradient(dom, t, u));
  return e;
}

// Harmonic lift of the boundary values, used as the default initial iterate.
std::vector<double> harmonic_lift(const Assembler& as,
                                  const std::vector<double>& bc_values) {
  std::vector<double> u = bc_values;
  MonotoneField ident = make_catalog_field({.kind = FieldKind::identity});
  for (std::size_t i = 0; i < u.size(); ++i)
    if (as.eq[i] >= 0) u[i] = 0.0;
  Eigen::SimplicialLDLT<SpMat> ldlt(as.laplacian());
  Eigen::VectorXd r = as.residual(ident, u);
  Eigen::VectorXd delta = ldlt.solve(r);
  as.apply_update(u, delta, -1.0);
  return u;
}

struct SolveState {
  std::vector<double> residual_history;
  int iterations = 0;
};

// One solve of a fixed field from a given iterate; returns final max residual.
double solve_one(const MonotoneField& field, const Assembler& as,
                 std::vector<double>& u, const SolveOptions& opts,
                 SolveState& st, SolveStrategy& used) {
  Eigen::VectorXd r = as.residual(field, u);
  double norm = max_norm(r);
  st.residual_history.push_back(norm);
  used = SolveStrategy::newton;

  bool newton_ok = true;
  while (norm > opts.tol && st.iterations < opts.max_iterations && newton_ok) {
    SpMat K = as.tangent(field, u);
    Eigen::SparseLU<SpMat> lu(K);
    if (lu.info() != Eigen::Success) { newton_ok = false; break; }
    Eigen::VectorXd delta = lu.solve(-r);
    if (lu.info() != Eigen::Success || !delta.allFinite()) {
      newton_ok = false;
      break;
    }
    double tau = 1.0;
    bool moved = false;
    std::vector<double> cand;
    for (int ls = 0; ls < 14; ++ls, tau *= 0.5) {
      cand = u;
      as.apply_update(cand, delta, tau);
      Eigen::VectorXd rc = as.residual(field, cand);
      double nc = max_norm(rc);
      if (nc <= (1.0 - 1e-4 * tau) * norm) {
        u = std::move(cand);
        r = std::move(rc);
        norm = nc;
        moved = true;
        break;
      }
    }
    if (!moved) { newton_ok = false; break; }
    ++st.iterations;
    st.residual_history.push_back(norm);
  }
  if (norm <= opts.tol) return norm;

  // Picard relaxation: preconditioned descent on the weak residual.
  used = SolveStrategy::picard;
  Eigen::SimplicialLDLT<SpMat> ldlt(as.laplacian());
  double tau = 1.0;
  while (norm > opts.tol && st.iterations < opts.max_iterations) {
    Eigen::VectorXd delta = ldlt.solve(r);
    bool moved = false;
    for (int ls = 0; ls < 24; ++ls, tau *= 0.5) {
      std::vector<double> cand = u;
      as.apply_update(cand, delta, -tau);
      Eigen::VectorXd rc = as.residual(field, cand);
      double nc = max_norm(rc);
      if (nc < norm) {
        u = std::move(cand);
        r = std::move(rc);
        norm = nc;
        moved = true;
        tau = std::min(1.0, tau * 1.5);
        break;
      }
    }
    if (!moved) break;
    ++st.iterations;
    st.residual_history.push_back(norm);
  }
  if (norm <= opts.tol) return norm;

  // Energy descent, available when the field is a gradient with potential.
  if (opts.allow_energy_descent && field.potential) {
    used = SolveStrategy::energy_descent;
    double e = energy_of(field, *as.dom, u);
    double tau2 = 1.0;
    while (norm > opts.tol && st.iterations < opts.max_iterations) {
      Eigen::VectorXd delta = ldlt.solve(r);
      double slope = -r.dot(delta);  // descent direction -delta
      bool moved = false;
      for (int ls = 0; ls < 30; ++ls, tau2 *= 0.5) {
        std::vector<double> cand = u;
        as.apply_update(cand, delta, -tau2);
        double ec = energy_of(field, *as.dom, cand);
        if (ec <= e + 1e-4 * tau2 * slope) {
          u = std::move(cand);
          e = ec;
          moved = true;
          tau2 = std::min(1.0, tau2 * 2.0);
          break;
        }
      }
      if (!moved) break;
      r = as.residual(field, u);
      norm = max_norm(r);
      ++st.iterations;
      st.residual_history.push_back(norm);
    }
  }
  return norm;
}

}  // namespace

PlaneVec GridFunction::gradient(int tri) const {
  return tri_gradient(*domain, domain->tris[tri], values);
}

std::vector<PlaneVec> GridFunction::gradients() const {
  std::vector<PlaneVec> g;
  g.reserve(domain->tris.size());
  for (const auto& t : domain->tris) g.push_back(tri_gradient(*domain, t, values));
  return g;
}

std::pair<GridFunction, SolveReport> solve_dirichlet(
    const MonotoneField& field, std::shared_ptr<const DiscDomain> domain,
    const std::function<double(double)>& boundary, const SolveOptions& opts) {
  Assembler as(domain);

  std::vector<double> u(domain->nodes.size(), 0.0);
  for (int b : domain->boundary_nodes) {
    PlaneVec p = domain->nodes[b];
    u[b] = boundary(std::atan2(p.y, p.x));
  }
  if (!opts.initial.empty()) {
    if (opts.initial.size() != u.size())
      throw std::invalid_argument("solve_dirichlet: initial iterate size mismatch");
    for (std::size_t i = 0; i < u.size(); ++i)
      if (as.eq[i] >= 0) u[i] = opts.initial[i];
  } else {
    u = harmonic_lift(as, u);
  }

  SolveState st;
  SolveStrategy used = SolveStrategy::newton;
  double norm = 0.0;

  std::vector<double> ladder = opts.continuation;
  for (double e : ladder) {
    MonotoneField fe = mollify(field, {.epsilon = e});
    norm = solve_one(fe, as, u, opts, st, used);
  }
  if (opts.mollify_eps > 0.0) {
    MonotoneField fe = mollify(field, {.epsilon = opts.mollify_eps});
    norm = solve_one(fe, as, u, opts, st, used);
  } else {
    norm = solve_one(field, as, u, opts, st, used);
  }

  if (norm > opts.tol)
    throw SolveFailure("solve_dirichlet: residual " + std::to_string(norm) +
                           " above tol after " + std::to_string(st.iterations) +
                           " iterations (consider mollify or continuation)",
                       st.residual_history);

  GridFunction gf{domain, std::move(u)};
  SolveReport rep;
  rep.residual_norm = norm;
  rep.iterations = st.iterations;
  rep.strategy = used;
  rep.residual_history = std::move(st.residual_history);
  for (std::size_t t = 0; t < domain->tris.size(); ++t)
    rep.lipschitz_estimate = std::max(rep.lipschitz_estimate, gf.gradient((int)t).norm());
  return {std::move(gf), std::move(rep)};
}

std::pair<GridFunction, double> reconstruct_conjugate(const MonotoneField& field,
                                                      const GridFunction& u) {
  const DiscDomain& dom = *u.domain;
  int pin = 0;
  for (std::size_t i = 0; i < dom.nodes.size(); ++i)
    if (dom.nodes[i].norm() < dom.nodes[pin].norm()) pin = (int)i;

  // Target w = i G(grad u) per triangle; minimize sum area |grad v - w|^2.
  std::vector<PlaneVec> w(dom.tris.size());
  for (std::size_t t = 0; t < dom.tris.size(); ++t)
    w[t] = field(u.gradient((int)t)).rot90();

  std::vector<int> eq(dom.nodes.size(), -1);
  int n = 0;
  for (std::size_t i = 0; i < dom.nodes.size(); ++i)
    if ((int)i != pin) eq[i] = n++;

  std::vector<Triplet> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (std::size_t ti = 0; ti < dom.tris.size(); ++ti) {
    const auto& t = dom.tris[ti];
    for (int a = 0; a < 3; ++a) {
      int ia = eq[t.v[a]];
      if (ia < 0) continue;
      rhs[ia] += t.area * dot(w[ti], t.grad[a]);
      for (int b = 0; b < 3; ++b)
        if (eq[t.v[b]] >= 0)
          trips.emplace_back(ia, eq[t.v[b]], t.area * dot(t.grad[a], t.grad[b]));
    }
  }
  SpMat L(n, n);
  L.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<SpMat> ldlt(L);
  Eigen::VectorXd sol = ldlt.solve(rhs);

  GridFunction v{u.domain, std::vector<double>(dom.nodes.size(), 0.0)};
  for (std::size_t i = 0; i < dom.nodes.size(); ++i)
    if (eq[i] >= 0) v.values[i] = sol[eq[i]];

  double defect2 = 0.0;
  for (std::size_t t = 0; t < dom.tris.size(); ++t)
    defect2 += dom.tris[t].area * (v.gradient((int)t) - w[t]).norm2();
  return {std::move(v), std::sqrt(defect2)};
}

ApproximationStudy approximation_study(const MonotoneField& field,
                                       const std::function<double(double)>& boundary,
                                       const std::vector<double>& eps_list,
                                       std::shared_ptr<const DiscDomain> domain,
                                       const SolveOptions& opts) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0))
      throw std::invalid_argument("approximation_study: eps must be in (0, 1)");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("approximation_study: eps list must decrease");
  }

  ApproximationStudy study;
  study.eps = eps_list;
  const GridFunction* prev = nullptr;
  SolveOptions local = opts;
  for (double e : eps_list) {
    local.mollify_eps = e;
    if (prev) local.initial = prev->values;
    try {
      auto [gf, rep] = solve_dirichlet(field, domain, boundary, local);
      study.solved.push_back(1);
      double lip = 0.0;
      for (std::size_t t = 0; t < domain->tris.size(); ++t)
        if (domain->tris[t].centroid.norm() <= 0.75)
          lip = std::max(lip, gf.gradient((int)t).norm());
      study.lipschitz.push_back(lip);
      study.solutions.push_back(std::move(gf));
      prev = &study.solutions.back();
    } catch (const SolveFailure&) {
      study.solved.push_back(0);
      study.lipschitz.push_back(0.0);
    }
  }
  for (std::size_t i = 0; i + 1 < study.solutions.size(); ++i)
    study.h1_increment.push_back(
        h1_distance(study.solutions[i], study.solutions[i + 1], 0.5));
  study.cauchy_trend = true;
  for (std::size_t i = 0; i + 1 < study.h1_increment.size(); ++i)
    if (study.h1_increment[i + 1] > 1.05 * study.h1_increment[i] + 1e-12)
      study.cauchy_trend = false;
  return study;
}

BeltramiAssembly assemble_beltrami(const LipschitzMap& H, const GridFunction& u,
                                   const GridFunction& v) {
  if (u.domain != v.domain)
    throw std::invalid_argument("assemble_beltrami: u, v on different meshes");
  BeltramiAssembly out{u, v, 0.0};
  const DiscDomain& dom = *u.domain;
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    PlaneVec gu = u.gradient((int)t), gv = v.gradient((int)t);
    Complex fz{0.5 * (gu.x + gv.y), 0.5 * (gv.x - gu.y)};
    Complex fzb{0.5 * (gu.x - gv.y), 0.5 * (gv.x + gu.y)};
    Complex mis = fzb - 0.5 * H(2.0 * fz);
    out.residual += dom.tris[t].area * std::norm(mis);
  }
  out.residual = std::sqrt(out.residual);
  return out;
}

double h1_distance(const GridFunction& a, const GridFunction& b, double radius) {
  const DiscDomain& dom = *a.domain;
  double acc = 0.0;
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    const auto& tri = dom.tris[t];
    if (tri.centroid.norm() > radius) continue;
    double dv = 0.0;
    for (int k = 0; k < 3; ++k) {
      double d = a.values[tri.v[k]] - b.values[tri.v[k]];
      dv += d * d / 3.0;
    }
    acc += tri.area * ((a.gradient((int)t) - b.gradient((int)t)).norm2() + dv);
  }
  return std::sqrt(acc);
}

double l2_error(const GridFunction& u,
                const std::function<double(PlaneVec)>& exact) {
  const DiscDomain& dom = *u.domain;
  double acc = 0.0;
  for (const auto& t : dom.tris) {
    for (int k = 0; k < 3; ++k) {
      int i = t.v[k], j = t.v[(k + 1) % 3];
      PlaneVec mid = 0.5 * (dom.nodes[i] + dom.nodes[j]);
      double uh = 0.5 * (u.values[i] + u.values[j]);
      double d = uh - exact(mid);
      acc += (t.area / 3.0) * d * d;
    }
  }
  return std::sqrt(acc);
}

GridFunction interpolate(std::shared_ptr<const DiscDomain> domain,
                         const std::function<double(PlaneVec)>& fn) {
  GridFunction gf{domain, {}};
  gf.values.reserve(domain->nodes.size());
  for (PlaneVec p : domain->nodes) gf.values.push_back(fn(p));
  return gf;
}

}  // namespace mono2d
