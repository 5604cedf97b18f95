#pragma once

#include <memory>
#include <vector>

#include "mono2d/plane_vec.hpp"

namespace mono2d {

struct Triangle {
  int v[3];         // CCW vertex indices
  double area;
  PlaneVec grad[3]; // gradients of the three hat functions
  PlaneVec centroid;
};

/// Conforming P1 triangulation of the closed unit disc built from concentric
/// rings: ring i of n carries 6i nodes at radius i/n, zipped ring to ring.
struct DiscDomain {
  double h = 0.0;      // requested mesh size, rings = round(1/h)
  int rings = 0;
  std::vector<PlaneVec> nodes;
  std::vector<Triangle> tris;
  std::vector<int> boundary_nodes;
  std::vector<char> is_boundary;
  double min_angle_deg = 0.0;
  double max_edge = 0.0;

  int node_count() const { return (int)nodes.size(); }
  int interior_count() const {
    return (int)(nodes.size() - boundary_nodes.size());
  }
};

std::shared_ptr<const DiscDomain> build_disc_mesh(double h);

}  // namespace mono2d
