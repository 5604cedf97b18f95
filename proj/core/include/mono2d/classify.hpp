#pragma once

#include <optional>
#include <vector>

#include "mono2d/field.hpp"

namespace mono2d {

struct Rect {
  double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
  bool contains(PlaneVec p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

/// Per-cell sampled ellipticity estimates over a grid of base points.
struct EllipticityProfile {
  Rect box;
  double grid_step = 0.1;
  int nx = 0, ny = 0;
  std::vector<double> scales;

  struct Cell {
    PlaneVec center;
    std::vector<double> lambda_by_scale;  // min over directions of q_lower
    std::vector<double> Lambda_by_scale;  // max over directions of 1/q_upper_inv
    double lambda_hat = 0.0;              // min over scales
    double Lambda_hat = 0.0;              // max over scales
  };
  std::vector<Cell> cells;  // row-major, j * nx + i

  const Cell& at(int i, int j) const { return cells[(std::size_t)j * nx + i]; }
  int index_of(PlaneVec p) const;  // nearest cell, -1 outside
};

EllipticityProfile sample_ellipticity(const MonotoneField& field, Rect box,
                                      double grid_step,
                                      const std::vector<double>& scales,
                                      int directions = 16);

struct BadComponent {
  std::vector<int> cell_indices;
  PlaneVec center;  // component centroid snapped to grid
};

/// Cells with lambda_hat < lambda_floor and Lambda_hat > Lambda_ceil,
/// clustered into connected components.
std::vector<BadComponent> detect_bad_set(const EllipticityProfile& profile,
                                         double lambda_floor,
                                         double Lambda_ceil);

struct CoveringCertificate {
  double M = 0, r = 0, lambda = 0, Lambda = 0;
  std::vector<PlaneVec> bad_centers;
  double eta = 0;  // grid-certified Lebesgue number
  double grid_step = 0;
  int grid_points_checked = 0;
};

class CoveringFailure : public std::runtime_error {
 public:
  CoveringFailure(const std::string& msg, std::vector<PlaneVec> uncovered_)
      : std::runtime_error(msg), uncovered(std::move(uncovered_)) {}
  std::vector<PlaneVec> uncovered;
};

/// Verifies at the profile resolution that the closed 2M-ball is covered by
/// the sampled O_lambda, the sampled V_Lambda, and the bad balls, and
/// extracts a Lebesgue number by erosion. Throws CoveringFailure otherwise.
CoveringCertificate build_covering(const EllipticityProfile& profile, double M,
                                   double r, double lambda, double Lambda,
                                   const std::vector<PlaneVec>& centers);

struct RadiusCertificate {
  double delta_single = 0;  // may underflow; see the log10 companion
  double log10_delta_single = 0;
  int K = 0;
  double delta_final = 0;
  double log10_delta_final = 0;
  double C_O = 0, C_V = 0;
  double c0 = 1.0, c_iter = 1.0;
  double monotony_floor = 0;
  double eta = 0, M = 0, lambda = 0, Lambda = 0;
};

/// Quantitative localization radius chain. monotony_floor must be a verified
/// lower bound for omega_G(t)/t on [eta/4, M+eta]. The exponential is also
/// reported in log10 form since it routinely underflows.
RadiusCertificate certified_radius(const CoveringCertificate& cert,
                                   double grad_l2, double G_grad_l2, double c0,
                                   double c_iter, double monotony_floor,
                                   double safety = 0.5);

struct StildeInclusionRow {
  PlaneVec point;
  std::vector<double> stilde_side;  // max over directions of q_lower, per scale
  std::vector<double> s_side;       // max over directions of 1/q_upper_inv, per scale
  bool violates_inclusion = false;
};

/// Flags sampled points whose symmetric-blowup quotient diverges across
/// scales while the inverse-type quotient stays bounded; empty for every
/// catalog field (the inclusion of the two degeneracy notions).
std::vector<StildeInclusionRow> stilde_inclusion_audit(
    const MonotoneField& field, Rect box, const std::vector<double>& scales,
    double grid_step = 0.25, int directions = 16, double blowup_factor = 10.0,
    double bound_cap = 1e3);

}  // namespace mono2d
