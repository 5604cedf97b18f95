#include "mono2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace mono2d {

namespace {

bool tri_meets_ball(const DiscDomain& dom, const Triangle& t, double delta) {
  if (t.centroid.norm() <= delta) return true;
  for (int k = 0; k < 3; ++k)
    if (dom.nodes[t.v[k]].norm() <= delta) return true;
  return false;
}

double cross(PlaneVec a, PlaneVec b) { return a.x * b.y - a.y * b.x; }

// Convex hull (monotone chain); diameter of a cloud equals the hull diameter.
std::vector<PlaneVec> convex_hull(std::vector<PlaneVec> pts) {
  std::sort(pts.begin(), pts.end(), [](PlaneVec a, PlaneVec b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](PlaneVec a, PlaneVec b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<PlaneVec> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 &&
           cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double cloud_diameter(const std::vector<PlaneVec>& pts) {
  std::vector<PlaneVec> hull = convex_hull(pts);
  double d2 = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      d2 = std::max(d2, (hull[i] - hull[j]).norm2());
  return std::sqrt(d2);
}

// Spatial hash over a point cloud for fixed-radius neighbor queries.
struct HashGrid {
  double cell;
  std::unordered_map<long long, std::vector<int>> bins;
  const std::vector<PlaneVec>& pts;

  HashGrid(const std::vector<PlaneVec>& p, double cell_) : cell(cell_), pts(p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      bins[key(p[i])].push_back((int)i);
  }
  long long key(PlaneVec p) const {
    long long ix = (long long)std::floor(p.x / cell);
    long long iy = (long long)std::floor(p.y / cell);
    return (ix << 32) ^ (iy & 0xffffffffLL);
  }
  template <class Fn>
  void near(PlaneVec p, Fn&& fn) const {
    long long ix = (long long)std::floor(p.x / cell);
    long long iy = (long long)std::floor(p.y / cell);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = bins.find(((ix + dx) << 32) ^ ((iy + dy) & 0xffffffffLL));
        if (it == bins.end()) continue;
        for (int idx : it->second) fn(idx);
      }
  }
};

// Second-order energy surrogate per triangle for a cell-wise vector field:
// patch-recover the field to nodes by area-weighted averaging, then take the
// squared Frobenius norm of the affine gradient of the recovered field.
// Consistent on smooth data for both interpolants and discrete solutions
// (plain edge jumps are not: they cancel superconvergently on solved fields).
std::vector<double> recovered_hessian_energy(const DiscDomain& dom,
                                             const std::vector<PlaneVec>& cellvals) {
  std::vector<PlaneVec> gnode(dom.nodes.size(), PlaneVec{0, 0});
  std::vector<double> wsum(dom.nodes.size(), 0.0);
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    const auto& tri = dom.tris[t];
    for (int k = 0; k < 3; ++k) {
      gnode[tri.v[k]] += tri.area * cellvals[t];
      wsum[tri.v[k]] += tri.area;
    }
  }
  for (std::size_t i = 0; i < gnode.size(); ++i)
    if (wsum[i] > 0.0) gnode[i] = (1.0 / wsum[i]) * gnode[i];

  std::vector<double> energy(dom.tris.size(), 0.0);
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    const auto& tri = dom.tris[t];
    PlaneVec gx{0, 0}, gy{0, 0};
    for (int k = 0; k < 3; ++k) {
      gx += gnode[tri.v[k]].x * tri.grad[k];
      gy += gnode[tri.v[k]].y * tri.grad[k];
    }
    energy[t] = gx.norm2() + gy.norm2();
  }
  return energy;
}

}  // namespace

GradientImage gradient_image(const GridFunction& u, double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("gradient_image: need 0 < delta <= 1");
  const DiscDomain& dom = *u.domain;
  GradientImage img;
  img.radius = delta;
  for (std::size_t t = 0; t < dom.tris.size(); ++t)
    if (tri_meets_ball(dom, dom.tris[t], delta))
      img.points.push_back(u.gradient((int)t));
  if (img.points.empty())
    throw std::invalid_argument("gradient_image: no triangle meets the ball");
  img.diameter = cloud_diameter(img.points);
  return img;
}

MaxMinReport maxmin_check(const GridFunction& u, double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("maxmin_check: need 0 < r < 1");
  const DiscDomain& dom = *u.domain;

  std::vector<PlaneVec> grads(dom.tris.size());
  double lip = 0.0;
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    grads[t] = u.gradient((int)t);
    lip = std::max(lip, grads[t].norm());
  }

  MaxMinReport rep;
  rep.r = r;
  rep.band = 2.0 * dom.h * std::max(lip, 1e-12);

  // Per-triangle resolution proxy: the worst gradient jump to an
  // edge-neighbor, ~ h |D^2 u| where the interpolant resolves u.
  std::map<std::pair<int, int>, int> edge_owner;
  std::vector<double> jump(dom.tris.size(), 0.0);
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    const auto& tri = dom.tris[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri.v[k], b = tri.v[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto [it, inserted] = edge_owner.emplace(key, (int)t);
      if (!inserted) {
        double d = (grads[t] - grads[it->second]).norm();
        jump[t] = std::max(jump[t], d);
        jump[it->second] = std::max(jump[it->second], d);
      }
    }
  }

  std::vector<PlaneVec> inner;
  std::vector<PlaneVec> ring;
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    const auto& tri = dom.tris[t];
    double lo = 1e30, hi = 0.0;
    for (int k = 0; k < 3; ++k) {
      double d = dom.nodes[tri.v[k]].norm();
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    // Triangles whose gradient jumps by more than the inclusion band are
    // unresolved at this h; their gradients say nothing about the continuum
    // cloud and are excluded (they recede under refinement wherever u is C1).
    if (lo <= r) {
      if (jump[t] > rep.band) {
        ++rep.unresolved;
      } else {
        inner.push_back(grads[t]);
      }
    }
    if (std::abs(tri.centroid.norm() - r) <= 2.0 * dom.h || (lo <= r && hi >= r))
      ring.push_back(grads[t]);
  }

  // Cloud boundary by empty-disc probes: a point is on the boundary when a
  // disc of radius band tangent to it in some direction contains no other
  // cloud point.
  HashGrid grid(inner, std::max(rep.band, 1e-12));
  HashGrid ring_grid(ring, std::max(rep.band, 1e-12));
  const int probes = 16;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    bool boundary = false;
    for (int d = 0; d < probes && !boundary; ++d) {
      double th = 2.0 * M_PI * d / probes;
      PlaneVec c = inner[i] + rep.band * PlaneVec{std::cos(th), std::sin(th)};
      bool empty = true;
      grid.near(c, [&](int j) {
        if ((std::size_t)j != i && (inner[j] - c).norm() < rep.band * (1 - 1e-9))
          empty = false;
      });
      boundary = empty;
    }
    if (!boundary) continue;
    ++rep.boundary_points;
    double best = 1e30;
    ring_grid.near(inner[i], [&](int j) {
      best = std::min(best, (ring[j] - inner[i]).norm());
    });
    if (best > rep.band) {
      // Hash lookup only sees the 3x3 neighborhood; confirm by full scan.
      for (PlaneVec q : ring) best = std::min(best, (q - inner[i]).norm());
      if (best > rep.band) ++rep.violations;
    }
  }
  rep.fraction =
      rep.boundary_points ? (double)rep.violations / rep.boundary_points : 0.0;
  return rep;
}

CacciopoliReport cacciopoli_ratio(const GridFunction& u,
                                  const MonotoneField& field,
                                  CacciopoliSide side, double threshold,
                                  const EllipticityProfile& profile) {
  if (!(threshold > 0.0))
    throw std::invalid_argument("cacciopoli_ratio: threshold must be > 0");
  const DiscDomain& dom = *u.domain;

  // Calibrate the jump surrogate on the interpolant of x^2 - y^2 over the
  // same selection region, where |D^2 u|^2 = 8 exactly.
  GridFunction cal{u.domain, {}};
  cal.values.reserve(dom.nodes.size());
  for (PlaneVec p : dom.nodes) cal.values.push_back(p.x * p.x - p.y * p.y);
  std::vector<PlaneVec> cal_grads = cal.gradients();
  std::vector<double> cal_energy = recovered_hessian_energy(dom, cal_grads);
  double cal_raw = 0.0, cal_area = 0.0;
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    if (dom.tris[t].centroid.norm() > 0.5) continue;
    cal_raw += dom.tris[t].area * cal_energy[t];
    cal_area += dom.tris[t].area;
  }
  double c_cal = (cal_raw > 0.0) ? 8.0 * cal_area / cal_raw : 0.0;

  std::vector<PlaneVec> grads = u.gradients();
  std::vector<PlaneVec> cellvals(dom.tris.size());
  for (std::size_t t = 0; t < dom.tris.size(); ++t)
    cellvals[t] = (side == CacciopoliSide::O_lambda) ? grads[t] : field(grads[t]);
  std::vector<double> energy = recovered_hessian_energy(dom, cellvals);

  CacciopoliReport rep;
  rep.side = side;
  rep.threshold = threshold;
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    if (dom.tris[t].centroid.norm() > 0.5) continue;
    int cell = profile.index_of(grads[t]);
    if (cell < 0) continue;  // gradient outside the profiled range
    const auto& rec = profile.cells[cell];
    // Slack absorbs finite-difference error in the sampled quotients, which
    // otherwise rejects exact-threshold fields (identity at lambda = 1).
    double slack = 1e-6 * std::max(1.0, threshold);
    bool member = (side == CacciopoliSide::O_lambda)
                      ? rec.lambda_hat >= threshold - slack
                      : rec.Lambda_hat <= threshold + slack;
    if (!member) continue;
    rep.lhs += c_cal * dom.tris[t].area * energy[t];
  }
  double norm2 = 0.0;
  for (std::size_t t = 0; t < dom.tris.size(); ++t) {
    PlaneVec v = (side == CacciopoliSide::O_lambda) ? field(grads[t]) : grads[t];
    norm2 += dom.tris[t].area * v.norm2();
  }
  rep.rhs_factor = (side == CacciopoliSide::O_lambda)
                       ? norm2 / (threshold * threshold)
                       : threshold * threshold * norm2;
  rep.ratio = (rep.rhs_factor > 0.0)
                  ? rep.lhs / rep.rhs_factor
                  : (rep.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return rep;
}

LocalizationVerdict localization_probe(const GridFunction& u,
                                       const MonotoneField& /*field*/,
                                       PlaneVec xi0, double rho,
                                       const std::vector<double>& delta_list) {
  if (!(rho > 0.0))
    throw std::invalid_argument("localization_probe: rho must be > 0");
  const DiscDomain& dom = *u.domain;
  std::vector<PlaneVec> grads = u.gradients();

  LocalizationVerdict verdict;
  verdict.xi0 = xi0;
  verdict.rho = rho;
  verdict.applicable = true;
  for (PlaneVec g : grads)
    if ((g - xi0).norm() < rho) verdict.applicable = false;
  if (!verdict.applicable) return verdict;

  std::vector<double> deltas = delta_list;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  for (double d : deltas) {
    LocalizationRow row;
    row.delta = d;
    row.min_dist = 1e30;
    for (std::size_t t = 0; t < dom.tris.size(); ++t) {
      if (!tri_meets_ball(dom, dom.tris[t], d)) continue;
      double dist = (grads[t] - xi0).norm();
      row.max_dist = std::max(row.max_dist, dist);
      row.min_dist = std::min(row.min_dist, dist);
    }
    if (row.max_dist <= 4.0 * rho)
      row.cls = LocClass::inside;
    else if (row.min_dist >= 3.0 * rho)
      row.cls = LocClass::outside;
    else
      row.cls = LocClass::mixed;
    verdict.rows.push_back(row);
  }
  verdict.inconclusive =
      !verdict.rows.empty() && verdict.rows.back().cls == LocClass::mixed;
  return verdict;
}

}  // namespace mono2d
