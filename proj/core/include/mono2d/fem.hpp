#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mono2d/beltrami.hpp"
#include "mono2d/field.hpp"
#include "mono2d/mesh.hpp"

namespace mono2d {

struct GridFunction {
  std::shared_ptr<const DiscDomain> domain;
  std::vector<double> values;  // one per node

  PlaneVec gradient(int tri) const;     // exact affine gradient on a triangle
  std::vector<PlaneVec> gradients() const;
  double value_at_node(int i) const { return values[i]; }
};

enum class SolveStrategy { newton, picard, energy_descent };

struct SolveOptions {
  double tol = 1e-9;
  int max_iterations = 80;
  double mollify_eps = 0.0;           // 0: solve the field as given
  std::vector<double> continuation;   // decreasing eps ladder, warm-started
  std::vector<double> initial;        // optional initial nodal iterate
  bool allow_energy_descent = true;   // fallback for gradient fields
};

struct SolveReport {
  double residual_norm = 0.0;  // max interior weak residual
  int iterations = 0;
  SolveStrategy strategy = SolveStrategy::newton;
  double lipschitz_estimate = 0.0;  // max |grad u| over triangles
  std::vector<double> residual_history;
};

class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& msg, std::vector<double> history_)
      : std::runtime_error(msg), residual_history(std::move(history_)) {}
  std::vector<double> residual_history;
};

/// Discrete Dirichlet problem for div G(grad u) = 0 on the unit disc.
/// boundary maps the angle of a boundary node to its Dirichlet value.
std::pair<GridFunction, SolveReport> solve_dirichlet(
    const MonotoneField& field, std::shared_ptr<const DiscDomain> domain,
    const std::function<double(double)>& boundary, const SolveOptions& opts = {});

/// Least-squares conjugate: v minimizing sum_T area |i G(grad u) - grad v|^2,
/// gauged by v = 0 at the node nearest the origin. Returns the attained
/// mismatch (square root of the minimum) as curl_defect.
std::pair<GridFunction, double> reconstruct_conjugate(const MonotoneField& field,
                                                      const GridFunction& u);

struct ApproximationStudy {
  std::vector<double> eps;
  std::vector<char> solved;
  std::vector<double> lipschitz;       // interior estimate, per eps
  std::vector<double> h1_increment;    // consecutive H1 distances on B_{1/2}
  bool cauchy_trend = false;           // increments non-increasing
  std::vector<GridFunction> solutions;
};

ApproximationStudy approximation_study(const MonotoneField& field,
                                       const std::function<double(double)>& boundary,
                                       const std::vector<double>& eps_list,
                                       std::shared_ptr<const DiscDomain> domain,
                                       const SolveOptions& opts = {});

struct BeltramiAssembly {
  GridFunction re, im;
  double residual = 0.0;  // L2 norm over triangles of the Beltrami mismatch
};

/// Assembles f = u + i v and evaluates the mismatch of the correspondence.
/// For a primal/conjugate pair the cell-wise identity is
/// f_zbar = H(2 f_z) / 2, which is what the residual measures.
BeltramiAssembly assemble_beltrami(const LipschitzMap& H, const GridFunction& u,
                                   const GridFunction& v);

/// H1 distance over triangles whose centroid lies in B_radius.
double h1_distance(const GridFunction& a, const GridFunction& b, double radius);

/// L2 error against a closed-form function, 3-point edge-midpoint quadrature.
double l2_error(const GridFunction& u,
                const std::function<double(PlaneVec)>& exact);

/// Nodal interpolant of a closed-form function.
GridFunction interpolate(std::shared_ptr<const DiscDomain> domain,
                         const std::function<double(PlaneVec)>& fn);

}  // namespace mono2d
