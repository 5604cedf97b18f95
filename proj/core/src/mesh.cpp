#include "mono2d/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace mono2d {

namespace {

double cross(PlaneVec a, PlaneVec b) { return a.x * b.y - a.y * b.x; }

int ring_offset(int i) { return 1 + 3 * i * (i - 1); }  // ring i >= 1

void finish_triangle(DiscDomain& dom, int a, int b, int c) {
  Triangle t;
  t.v[0] = a;
  t.v[1] = b;
  t.v[2] = c;
  PlaneVec pa = dom.nodes[a], pb = dom.nodes[b], pc = dom.nodes[c];
  double s = cross(pb - pa, pc - pa);
  if (s < 0.0) {
    std::swap(t.v[1], t.v[2]);
    std::swap(pb, pc);
    s = -s;
  }
  t.area = 0.5 * s;
  t.grad[0] = (1.0 / s) * (pc - pb).rot90();
  t.grad[1] = (1.0 / s) * (pa - pc).rot90();
  t.grad[2] = (1.0 / s) * (pb - pa).rot90();
  t.centroid = (1.0 / 3.0) * (pa + pb + pc);
  dom.tris.push_back(t);
}

}  // namespace

std::shared_ptr<const DiscDomain> build_disc_mesh(double h) {
  if (!(h > 0.0 && h <= 0.5))
    throw std::invalid_argument("build_disc_mesh: need 0 < h <= 0.5");
  int n = std::max(2, (int)std::lround(1.0 / h));

  auto dom_ptr = std::make_shared<DiscDomain>();
  DiscDomain& dom = *dom_ptr;
  dom.h = h;
  dom.rings = n;

  dom.nodes.push_back({0, 0});
  for (int i = 1; i <= n; ++i) {
    double r = (double)i / n;
    int m = 6 * i;
    for (int j = 0; j < m; ++j) {
      double th = 2.0 * M_PI * j / m;
      dom.nodes.push_back({r * std::cos(th), r * std::sin(th)});
    }
  }

  // Ring 1: fan around the center.
  for (int j = 0; j < 6; ++j)
    finish_triangle(dom, 0, 1 + j, 1 + (j + 1) % 6);

  // Annuli: zip the two circles by increasing angle.
  for (int i = 2; i <= n; ++i) {
    int m = 6 * i, l = 6 * (i - 1);
    int base_o = ring_offset(i), base_i = ring_offset(i - 1);
    int p = 0, q = 0;
    while (p < m || q < l) {
      double next_o = 2.0 * M_PI * (p + 1) / m;
      double next_i = 2.0 * M_PI * (q + 1) / l;
      if (p < m && (q >= l || next_o <= next_i + 1e-12)) {
        finish_triangle(dom, base_i + q % l, base_o + p % m,
                        base_o + (p + 1) % m);
        ++p;
      } else {
        finish_triangle(dom, base_i + q % l, base_o + p % m,
                        base_i + (q + 1) % l);
        ++q;
      }
    }
  }

  dom.is_boundary.assign(dom.nodes.size(), 0);
  for (int j = 0; j < 6 * n; ++j) {
    int idx = ring_offset(n) + j;
    dom.is_boundary[idx] = 1;
    dom.boundary_nodes.push_back(idx);
  }

  double min_angle = M_PI;
  double max_edge = 0.0;
  for (const auto& t : dom.tris) {
    PlaneVec p0 = dom.nodes[t.v[0]], p1 = dom.nodes[t.v[1]],
             p2 = dom.nodes[t.v[2]];
    PlaneVec e0 = p1 - p0, e1 = p2 - p1, e2 = p0 - p2;
    max_edge = std::max({max_edge, e0.norm(), e1.norm(), e2.norm()});
    auto angle = [](PlaneVec u, PlaneVec v) {
      return std::acos(std::clamp(dot(u, v) / (u.norm() * v.norm()), -1.0, 1.0));
    };
    min_angle = std::min({min_angle, angle(e0, -1.0 * e2), angle(e1, -1.0 * e0),
                          angle(e2, -1.0 * e1)});
  }
  dom.min_angle_deg = min_angle * 180.0 / M_PI;
  dom.max_edge = max_edge;

  if (dom.min_angle_deg < 20.0)
    throw std::runtime_error("build_disc_mesh: quality audit failed, min angle " +
                             std::to_string(dom.min_angle_deg) + " deg");
  return dom_ptr;
}

}  // namespace mono2d
