#pragma once

#include <stdexcept>
#include <vector>

#include "mono2d/field.hpp"

namespace mono2d {

struct InversionResult {
  PlaneVec preimage;
  double residual = 0.0;  // |G(preimage) - target|
  int iterations = 0;
};

class InversionFailure : public std::runtime_error {
 public:
  InversionFailure(const std::string& msg, InversionResult best_)
      : std::runtime_error(msg), best(best_) {}
  InversionResult best;
};

struct InvertOptions {
  double box_radius = 8.0;  // search box for the initial grid scan
  int grid = 17;            // grid scan resolution per axis
  int max_iterations = 200;
  bool warm_start = false;
  PlaneVec init;            // used when warm_start is true
};

/// Solve G(xi) = target for a strictly monotone field. Damped Newton with
/// finite-difference Jacobian; Armijo descent on |G(xi) - target|^2 as the
/// derivative-robust fallback. Throws InversionFailure on nonconvergence.
InversionResult invert_field(const MonotoneField& field, PlaneVec target,
                             double tol, const InvertOptions& opts = {});

/// The dual field xi -> i G^{-1}(-i xi), evaluated through invert_field.
MonotoneField dual_field(const MonotoneField& field, double tol = 1e-10,
                         const InvertOptions& opts = {});

struct CutoffSpec {
  double M = 0.0;
  double c = 0.0;  // 2 sup_{B_4M} |G| / M
  double L = 0.0;  // linear growth constant, 2c + 2cM + sup_{B_4M} |G|
  double sup_G = 0.0;
};

/// Modification at infinity: equal to G on closed B_M, linear growth
/// L(1+|xi|), uniformly monotone outside B_4M.
std::pair<MonotoneField, CutoffSpec> modify_at_infinity(
    const MonotoneField& field, double M);

struct MollifierSpec {
  double epsilon = 0.05;  // in (0, 1)
  int kernel_order = 8;   // quadrature nodes per axis
};

/// Smooth strongly monotone approximation: bump-kernel convolution at scale
/// epsilon plus the epsilon * xi stiffening term.
MonotoneField mollify(const MonotoneField& field, const MollifierSpec& spec);

/// Nodes/weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace mono2d
