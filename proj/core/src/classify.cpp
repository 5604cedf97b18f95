#include "mono2d/classify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace mono2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

int EllipticityProfile::index_of(PlaneVec p) const {
  if (!box.contains(p)) return -1;
  int i = (int)std::lround((p.x - box.x0) / grid_step);
  int j = (int)std::lround((p.y - box.y0) / grid_step);
  i = std::clamp(i, 0, nx - 1);
  j = std::clamp(j, 0, ny - 1);
  return j * nx + i;
}

EllipticityProfile sample_ellipticity(const MonotoneField& field, Rect box,
                                      double grid_step,
                                      const std::vector<double>& scales,
                                      int directions) {
  if (!(grid_step > 0.0))
    throw std::invalid_argument("sample_ellipticity: grid_step must be > 0");
  if (scales.empty())
    throw std::invalid_argument("sample_ellipticity: need at least one scale");
  for (double s : scales)
    if (!(s > 0.0))
      throw std::invalid_argument("sample_ellipticity: scales must be > 0");
  if (directions < 4)
    throw std::invalid_argument("sample_ellipticity: need >= 4 directions");

  EllipticityProfile prof;
  prof.box = box;
  prof.grid_step = grid_step;
  prof.scales = scales;
  prof.nx = (int)std::floor((box.x1 - box.x0) / grid_step + 1e-9) + 1;
  prof.ny = (int)std::floor((box.y1 - box.y0) / grid_step + 1e-9) + 1;
  prof.cells.reserve((std::size_t)prof.nx * prof.ny);

  for (int j = 0; j < prof.ny; ++j) {
    for (int i = 0; i < prof.nx; ++i) {
      EllipticityProfile::Cell cell;
      cell.center = {box.x0 + i * grid_step, box.y0 + j * grid_step};
      cell.lambda_hat = kInf;
      cell.Lambda_hat = 0.0;
      for (double s : scales) {
        double lam = kInf, Lam = 0.0;
        for (int d = 0; d < directions; ++d) {
          double th = M_PI * d / directions;  // antipodal offsets are redundant
          PlaneVec off{s * std::cos(th), s * std::sin(th)};
          QuotientSample q = quotient_sample(field, cell.center, off);
          lam = std::min(lam, q.q_lower);
          double Lsample = (q.q_upper_inv == kQuotientInf)
                               ? 0.0
                               : 1.0 / q.q_upper_inv;
          Lam = std::max(Lam, Lsample);
        }
        cell.lambda_by_scale.push_back(lam);
        cell.Lambda_by_scale.push_back(Lam);
        cell.lambda_hat = std::min(cell.lambda_hat, lam);
        cell.Lambda_hat = std::max(cell.Lambda_hat, Lam);
      }
      prof.cells.push_back(std::move(cell));
    }
  }
  return prof;
}

std::vector<BadComponent> detect_bad_set(const EllipticityProfile& profile,
                                         double lambda_floor,
                                         double Lambda_ceil) {
  const int nx = profile.nx, ny = profile.ny;
  std::vector<char> bad((std::size_t)nx * ny, 0);
  for (std::size_t k = 0; k < profile.cells.size(); ++k) {
    const auto& c = profile.cells[k];
    if (c.lambda_hat < lambda_floor && c.Lambda_hat > Lambda_ceil) bad[k] = 1;
  }

  std::vector<int> comp((std::size_t)nx * ny, -1);
  std::vector<BadComponent> out;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int k = j * nx + i;
      if (!bad[k] || comp[k] >= 0) continue;
      // 8-connected flood fill
      BadComponent bc;
      std::deque<int> queue{k};
      comp[k] = (int)out.size();
      while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        bc.cell_indices.push_back(cur);
        int ci = cur % nx, cj = cur / nx;
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            int ni = ci + di, nj = cj + dj;
            if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
            int nk = nj * nx + ni;
            if (bad[nk] && comp[nk] < 0) {
              comp[nk] = comp[k];
              queue.push_back(nk);
            }
          }
        }
      }
      PlaneVec centroid{0, 0};
      for (int idx : bc.cell_indices) centroid += profile.cells[idx].center;
      centroid = (1.0 / bc.cell_indices.size()) * centroid;
      int snap = profile.index_of(centroid);
      bc.center = (snap >= 0) ? profile.cells[snap].center : centroid;
      out.push_back(std::move(bc));
    }
  }
  return out;
}

CoveringCertificate build_covering(const EllipticityProfile& profile, double M,
                                   double r, double lambda, double Lambda,
                                   const std::vector<PlaneVec>& centers) {
  if (!(M > 0 && r > 0 && lambda > 0 && Lambda > 0))
    throw std::invalid_argument("build_covering: parameters must be > 0");
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      if ((centers[a] - centers[b]).norm() < 4.0 * r)
        throw std::invalid_argument(
            "build_covering: ball centers closer than 4r");

  const double gs = profile.grid_step;
  const int nx = profile.nx, ny = profile.ny;
  double margin = 2.0 * M + gs;
  if (profile.box.x0 > -margin + gs || profile.box.x1 < margin - gs ||
      profile.box.y0 > -margin + gs || profile.box.y1 < margin - gs) {
    // Tolerate a box that just reaches 2M; anything smaller cannot certify.
    if (profile.box.x0 > -2.0 * M || profile.box.x1 < 2.0 * M ||
        profile.box.y0 > -2.0 * M || profile.box.y1 < 2.0 * M)
      throw std::invalid_argument(
          "build_covering: profile box does not contain the closed 2M-ball");
  }

  // Membership masks at the grid resolution.
  std::vector<char> in_O(profile.cells.size(), 0), in_V(profile.cells.size(), 0);
  for (std::size_t k = 0; k < profile.cells.size(); ++k) {
    // Slack absorbs finite-difference error in the sampled quotients
    // (identity at lambda = 1 would otherwise miss its own threshold).
    double slack_O = 1e-6 * std::max(1.0, lambda);
    double slack_V = 1e-6 * std::max(1.0, Lambda);
    in_O[k] = profile.cells[k].lambda_hat >= lambda - slack_O;
    in_V[k] = profile.cells[k].Lambda_hat <= Lambda + slack_V;
  }

  // Two-pass chamfer distance (in grid steps) to the complement of each mask.
  auto erosion_depth = [&](const std::vector<char>& mask) {
    const double big = 1e18;
    std::vector<double> d(mask.size());
    for (std::size_t k = 0; k < mask.size(); ++k) d[k] = mask[k] ? big : 0.0;
    auto relax = [&](int k, int nk, double w) {
      if (d[nk] + w < d[k]) d[k] = d[nk] + w;
    };
    const double s2 = std::sqrt(2.0);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        int k = j * nx + i;
        if (i > 0) relax(k, k - 1, 1.0);
        if (j > 0) relax(k, k - nx, 1.0);
        if (i > 0 && j > 0) relax(k, k - nx - 1, s2);
        if (i < nx - 1 && j > 0) relax(k, k - nx + 1, s2);
      }
    for (int j = ny - 1; j >= 0; --j)
      for (int i = nx - 1; i >= 0; --i) {
        int k = j * nx + i;
        if (i < nx - 1) relax(k, k + 1, 1.0);
        if (j < ny - 1) relax(k, k + nx, 1.0);
        if (i < nx - 1 && j < ny - 1) relax(k, k + nx + 1, s2);
        if (i > 0 && j < ny - 1) relax(k, k + nx - 1, s2);
      }
    // Cells on the profile border may sit deep inside the true set; the
    // chamfer value there is still a valid (conservative) lower bound only
    // if we cap by the distance to the border itself, which we accept.
    return d;
  };
  std::vector<double> depth_O = erosion_depth(in_O);
  std::vector<double> depth_V = erosion_depth(in_V);

  CoveringCertificate cert;
  cert.M = M;
  cert.r = r;
  cert.lambda = lambda;
  cert.Lambda = Lambda;
  cert.bad_centers = centers;
  cert.grid_step = gs;

  double eta = kInf;
  std::vector<PlaneVec> uncovered;
  int checked = 0;
  for (std::size_t k = 0; k < profile.cells.size(); ++k) {
    PlaneVec p = profile.cells[k].center;
    if (p.norm() > 2.0 * M + 1e-12) continue;
    ++checked;
    double depth = std::max(depth_O[k], depth_V[k]) * gs;
    for (PlaneVec c : centers) depth = std::max(depth, r - (p - c).norm());
    if (depth <= 0.0) {
      uncovered.push_back(p);
      continue;
    }
    eta = std::min(eta, depth);
  }
  if (!uncovered.empty()) {
    std::ostringstream msg;
    msg << "build_covering: " << uncovered.size()
        << " grid points of the 2M-ball lie in no covering member, first at ("
        << uncovered[0].x << ", " << uncovered[0].y << ")";
    throw CoveringFailure(msg.str(), std::move(uncovered));
  }
  cert.eta = std::min(eta, 0.999 * r);
  cert.grid_points_checked = checked;
  return cert;
}

RadiusCertificate certified_radius(const CoveringCertificate& cert,
                                   double grad_l2, double G_grad_l2, double c0,
                                   double c_iter, double monotony_floor,
                                   double safety) {
  if (!(monotony_floor > 0.0))
    throw std::invalid_argument("certified_radius: monotony_floor must be > 0");
  if (!(safety >= 0.0 && safety < 1.0))
    throw std::invalid_argument("certified_radius: safety must be in [0, 1)");
  if (!(cert.eta > 0.0))
    throw std::invalid_argument("certified_radius: certificate has eta <= 0");

  RadiusCertificate rc;
  rc.c0 = c0;
  rc.c_iter = c_iter;
  rc.monotony_floor = monotony_floor;
  rc.eta = cert.eta;
  rc.M = cert.M;
  rc.lambda = cert.lambda;
  rc.Lambda = cert.Lambda;
  rc.C_O = (c0 / (cert.lambda * cert.lambda)) * G_grad_l2 * G_grad_l2;
  rc.C_V = c0 * cert.Lambda * cert.Lambda * grad_l2 * grad_l2;

  double C = std::max(rc.C_O, rc.C_V);
  double ln_single = -32.0 * M_PI * C / (monotony_floor * monotony_floor) +
                     std::log(0.5) + std::log1p(-safety);
  rc.delta_single = std::exp(ln_single);
  rc.log10_delta_single = ln_single / std::log(10.0);
  rc.K = (int)std::ceil(c_iter * cert.M * cert.M / (cert.eta * cert.eta));
  rc.delta_final = std::pow(rc.delta_single, (double)rc.K);
  rc.log10_delta_final = rc.K * rc.log10_delta_single;
  return rc;
}

std::vector<StildeInclusionRow> stilde_inclusion_audit(
    const MonotoneField& field, Rect box, const std::vector<double>& scales,
    double grid_step, int directions, double blowup_factor, double bound_cap) {
  if (scales.size() < 2)
    throw std::invalid_argument(
        "stilde_inclusion_audit: need at least two scales");
  std::vector<double> sorted = scales;  // coarse to fine
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  std::vector<StildeInclusionRow> out;
  int nx = (int)std::floor((box.x1 - box.x0) / grid_step + 1e-9) + 1;
  int ny = (int)std::floor((box.y1 - box.y0) / grid_step + 1e-9) + 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      StildeInclusionRow row;
      row.point = {box.x0 + i * grid_step, box.y0 + j * grid_step};
      for (double s : sorted) {
        double st = 0.0, ss = 0.0;
        for (int d = 0; d < directions; ++d) {
          double th = M_PI * d / directions;
          PlaneVec off{s * std::cos(th), s * std::sin(th)};
          QuotientSample q = quotient_sample(field, row.point, off);
          st = std::max(st, q.q_lower);
          if (q.q_upper_inv != kQuotientInf)
            ss = std::max(ss, 1.0 / q.q_upper_inv);
        }
        row.stilde_side.push_back(st);
        row.s_side.push_back(ss);
      }
      // Violation: symmetric side blows up through scales while the inverse
      // side stays bounded. Both conditions use the coarsest scale as the
      // reference so absolute magnitudes do not matter.
      double st0 = row.stilde_side.front(), st1 = row.stilde_side.back();
      double ss1 = row.s_side.back();
      bool st_blows = st1 > blowup_factor * std::max(st0, 1.0);
      bool ss_bounded = ss1 < bound_cap;
      row.violates_inclusion = st_blows && ss_bounded;
      if (row.violates_inclusion) out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace mono2d
