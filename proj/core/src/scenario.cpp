#include "mono2d/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mono2d/beltrami.hpp"
#include "mono2d/diagnostics.hpp"
#include "mono2d/io.hpp"
#include "mono2d/transforms.hpp"

namespace mono2d {

namespace fs = std::filesystem;

namespace {

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::catalog: return "catalog";
    case Scenario::classify: return "classify";
    case Scenario::transform: return "transform";
    case Scenario::solve: return "solve";
    case Scenario::diagnose: return "diagnose";
    case Scenario::counterexample: return "counterexample";
    case Scenario::certify: return "certify";
  }
  return "?";
}

Json echo_config(const RunConfig& c) {
  Json j;
  j["scenario"] = scenario_name(c.scenario);
  j["field"] = c.field_expr;
  j["label"] = c.label;
  j["h"] = c.h;
  j["boundary"] = c.boundary;
  j["tol"] = c.tol;
  j["mollify_eps"] = c.mollify_eps;
  j["box"] = {c.box.x0, c.box.y0, c.box.x1, c.box.y1};
  j["grid_step"] = c.grid_step;
  j["scales"] = c.scales;
  j["lambda"] = c.lambda;
  j["Lambda"] = c.Lambda;
  j["r"] = c.r;
  j["M"] = c.M;
  j["c0"] = c.c0;
  j["c_iter"] = c.c_iter;
  j["deltas"] = c.deltas;
  j["rho"] = c.rho;
  j["xi0"] = {c.xi0.x, c.xi0.y};
  j["seed"] = c.seed;
  return j;
}

class AuditFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- scenarios ----

void run_catalog(const RunConfig& cfg, Manifest& man) {
  MonotoneField field = parse_field_expr(cfg.field_expr);

  CsvWriter samples({"xi_x", "xi_y", "G_x", "G_y"});
  const int n = 21;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      PlaneVec xi{cfg.box.x0 + (cfg.box.x1 - cfg.box.x0) * i / (n - 1),
                  cfg.box.y0 + (cfg.box.y1 - cfg.box.y0) * j / (n - 1)};
      PlaneVec g = field(xi);
      samples.row({xi.x, xi.y, g.x, g.y});
    }
  samples.save(man.dir() + "/samples.csv");
  man.record("samples.csv");

  CsvWriter quot({"xi_x", "xi_y", "zeta_x", "zeta_y", "q_lower", "q_upper_inv"});
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 9; ++i) {
      PlaneVec xi{cfg.box.x0 + (cfg.box.x1 - cfg.box.x0) * i / 8.0,
                  cfg.box.y0 + (cfg.box.y1 - cfg.box.y0) * j / 8.0};
      for (double s : cfg.scales)
        for (int d = 0; d < 8; ++d) {
          double th = M_PI * d / 8.0;
          PlaneVec z{s * std::cos(th), s * std::sin(th)};
          QuotientSample q = quotient_sample(field, xi, z);
          quot.row({xi.x, xi.y, z.x, z.y, q.q_lower, q.q_upper_inv});
        }
    }
  quot.save(man.dir() + "/quotients.csv");
  man.record("quotients.csv");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  double min_gap = std::numeric_limits<double>::infinity();
  int bad = 0;
  const int pairs = 20000;
  for (int k = 0; k < pairs; ++k) {
    PlaneVec a{U(rng), U(rng)}, b{U(rng), U(rng)};
    if ((a - b).norm() < 1e-12) continue;
    double gap = monotonicity_gap(field, a, b);
    min_gap = std::min(min_gap, gap);
    if (!(gap > 0.0)) ++bad;
  }
  man.add_note("monotonicity_min_gap", min_gap);
  man.add_note("monotonicity_pairs", pairs);

  CsvWriter mod({"t", "omega_restricted"});
  for (double t : {0.1, 0.2, 0.5, 1.0, 2.0})
    mod.row({t, modulus_of_monotony(field, t, 5.0, 20000, cfg.seed)});
  mod.save(man.dir() + "/modulus.csv");
  man.record("modulus.csv");

  if (bad > 0)
    throw AuditFailure("monotonicity audit failed on " + std::to_string(bad) +
                       " pairs");
}

void run_classify(const RunConfig& cfg, Manifest& man) {
  MonotoneField field = parse_field_expr(cfg.field_expr);
  EllipticityProfile prof =
      sample_ellipticity(field, cfg.box, cfg.grid_step, cfg.scales);

  std::vector<std::string> header{"x", "y"};
  for (double s : prof.scales) {
    header.push_back("lambda_s" + std::to_string(s));
    header.push_back("Lambda_s" + std::to_string(s));
  }
  header.push_back("lambda_hat");
  header.push_back("Lambda_hat");
  CsvWriter csv(header);
  std::vector<double> lam_map, Lam_map;
  for (const auto& c : prof.cells) {
    std::vector<double> row{c.center.x, c.center.y};
    for (std::size_t s = 0; s < prof.scales.size(); ++s) {
      row.push_back(c.lambda_by_scale[s]);
      row.push_back(c.Lambda_by_scale[s]);
    }
    row.push_back(c.lambda_hat);
    row.push_back(c.Lambda_hat);
    csv.row(row);
    lam_map.push_back(c.lambda_hat);
    Lam_map.push_back(c.Lambda_hat);
  }
  csv.save(man.dir() + "/profile.csv");
  man.record("profile.csv");

  if (cfg.svg) {
    svg_heatmap(man.dir() + "/lambda_hat.svg", prof.nx, prof.ny, lam_map,
                cfg.box.x0, cfg.box.y0, cfg.box.x1, cfg.box.y1);
    man.record("lambda_hat.svg");
    svg_heatmap(man.dir() + "/Lambda_hat.svg", prof.nx, prof.ny, Lam_map,
                cfg.box.x0, cfg.box.y0, cfg.box.x1, cfg.box.y1);
    man.record("Lambda_hat.svg");
  }

  auto components = detect_bad_set(prof, cfg.lambda, cfg.Lambda);
  Json bad = Json::array();
  for (const auto& c : components)
    bad.push_back({{"center", {c.center.x, c.center.y}},
                   {"cells", c.cell_indices.size()}});
  write_json_file(man.dir() + "/bad_set.json",
                  {{"lambda_floor", cfg.lambda},
                   {"Lambda_ceil", cfg.Lambda},
                   {"components", bad}});
  man.record("bad_set.json");
  man.add_note("bad_components", components.size());

  auto violations = stilde_inclusion_audit(field, cfg.box, cfg.scales,
                                           2 * cfg.grid_step);
  man.add_note("stilde_violations", violations.size());
  if (!violations.empty())
    throw AuditFailure("stilde inclusion audit flagged " +
                       std::to_string(violations.size()) + " points");
}

void run_transform(const RunConfig& cfg, Manifest& man) {
  MonotoneField field = parse_field_expr(cfg.field_expr);
  CsvWriter csv({"xi_x", "xi_y", "G_x", "G_y"});
  const int n = 41;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      PlaneVec xi{cfg.box.x0 + (cfg.box.x1 - cfg.box.x0) * i / (n - 1),
                  cfg.box.y0 + (cfg.box.y1 - cfg.box.y0) * j / (n - 1)};
      PlaneVec g = field(xi);
      csv.row({xi.x, xi.y, g.x, g.y});
    }
  csv.save(man.dir() + "/evaluations.csv");
  man.record("evaluations.csv");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  double min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2000; ++k) {
    PlaneVec a{U(rng), U(rng)}, b{U(rng), U(rng)};
    if ((a - b).norm() < 1e-9) continue;
    min_gap = std::min(min_gap, monotonicity_gap(field, a, b));
  }
  man.add_note("transform_min_gap", min_gap);
  if (!(min_gap > 0.0))
    throw AuditFailure("transformed field failed the monotonicity audit");
}

Json solve_common(const RunConfig& cfg, Manifest& man, MonotoneField& field,
                  GridFunction& u, SolveReport& rep) {
  field = parse_field_expr(cfg.field_expr);
  auto domain = build_disc_mesh(cfg.h);
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.mollify_eps = cfg.mollify_eps;
  opts.continuation = cfg.continuation;
  auto solved = solve_dirichlet(field, domain, parse_boundary(cfg.boundary), opts);
  u = std::move(solved.first);
  rep = std::move(solved.second);

  CsvWriter nodal({"x", "y", "u"});
  for (std::size_t i = 0; i < domain->nodes.size(); ++i)
    nodal.row({domain->nodes[i].x, domain->nodes[i].y, u.values[i]});
  nodal.save(man.dir() + "/solution.csv");
  man.record("solution.csv");

  CsvWriter cloud({"tri", "ux", "uy"});
  for (std::size_t t = 0; t < domain->tris.size(); ++t) {
    PlaneVec g = u.gradient((int)t);
    cloud.row({(double)t, g.x, g.y});
  }
  cloud.save(man.dir() + "/gradient_cloud.csv");
  man.record("gradient_cloud.csv");

  if (cfg.svg) {
    svg_contour(man.dir() + "/solution.svg", u);
    man.record("solution.svg");
  }

  auto [v, curl_defect] = reconstruct_conjugate(field, u);
  CsvWriter vcsv({"x", "y", "v"});
  for (std::size_t i = 0; i < domain->nodes.size(); ++i)
    vcsv.row({domain->nodes[i].x, domain->nodes[i].y, v.values[i]});
  vcsv.save(man.dir() + "/conjugate.csv");
  man.record("conjugate.csv");

  Json header;
  header["field"] = field.spec.label.empty() ? cfg.field_expr : field.spec.label;
  header["h"] = cfg.h;
  header["nodes"] = domain->nodes.size();
  header["triangles"] = domain->tris.size();
  header["mesh_min_angle_deg"] = domain->min_angle_deg;
  header["tol"] = cfg.tol;
  header["residual_norm"] = rep.residual_norm;
  header["iterations"] = rep.iterations;
  header["strategy"] = rep.strategy == SolveStrategy::newton   ? "newton"
                       : rep.strategy == SolveStrategy::picard ? "picard"
                                                               : "energy_descent";
  header["lipschitz_estimate"] = rep.lipschitz_estimate;
  header["curl_defect"] = curl_defect;
  write_json_file(man.dir() + "/solve.json", header);
  man.record("solve.json");
  return header;
}

void run_solve(const RunConfig& cfg, Manifest& man) {
  MonotoneField field;
  GridFunction u;
  SolveReport rep;
  solve_common(cfg, man, field, u, rep);
}

void run_diagnose(const RunConfig& cfg, Manifest& man) {
  MonotoneField field;
  GridFunction u;
  SolveReport rep;
  solve_common(cfg, man, field, u, rep);

  CsvWriter di({"delta", "points", "diameter"});
  for (double d : cfg.deltas) {
    GradientImage img = gradient_image(u, d);
    di.row({d, (double)img.points.size(), img.diameter});
  }
  di.save(man.dir() + "/gradient_image.csv");
  man.record("gradient_image.csv");

  MaxMinReport mm = maxmin_check(u, 0.5);
  Json diag;
  diag["maxmin"] = {{"r", mm.r},
                    {"band", mm.band},
                    {"boundary_points", mm.boundary_points},
                    {"violations", mm.violations},
                    {"fraction", mm.fraction}};

  // Profile the field over the padded bounding box of the gradient cloud.
  double lo_x = 1e30, lo_y = 1e30, hi_x = -1e30, hi_y = -1e30;
  for (PlaneVec g : u.gradients()) {
    lo_x = std::min(lo_x, g.x);
    lo_y = std::min(lo_y, g.y);
    hi_x = std::max(hi_x, g.x);
    hi_y = std::max(hi_y, g.y);
  }
  double pad = 0.2 + 0.05 * (hi_x - lo_x + hi_y - lo_y);
  Rect gbox{lo_x - pad, lo_y - pad, hi_x + pad, hi_y + pad};
  double gstep = std::max((gbox.x1 - gbox.x0), (gbox.y1 - gbox.y0)) / 40.0;
  EllipticityProfile prof =
      sample_ellipticity(field, gbox, gstep, cfg.scales, 16);
  for (auto side : {CacciopoliSide::O_lambda, CacciopoliSide::V_Lambda}) {
    double thr = side == CacciopoliSide::O_lambda ? cfg.lambda : cfg.Lambda;
    CacciopoliReport cr = cacciopoli_ratio(u, field, side, thr, prof);
    const char* name = side == CacciopoliSide::O_lambda ? "cacciopoli_O"
                                                        : "cacciopoli_V";
    diag[name] = {{"threshold", cr.threshold},
                  {"lhs", cr.lhs},
                  {"rhs_factor", cr.rhs_factor},
                  {"ratio", cr.ratio}};
  }

  LocalizationVerdict loc =
      localization_probe(u, field, cfg.xi0, cfg.rho, cfg.deltas);
  Json rows = Json::array();
  for (const auto& r : loc.rows)
    rows.push_back({{"delta", r.delta},
                    {"class", r.cls == LocClass::inside    ? "inside"
                              : r.cls == LocClass::outside ? "outside"
                                                           : "mixed"},
                    {"min_dist", r.min_dist},
                    {"max_dist", r.max_dist}});
  diag["localization"] = {{"applicable", loc.applicable},
                          {"inconclusive", loc.inconclusive},
                          {"rows", rows}};
  write_json_file(man.dir() + "/diagnostics.json", diag);
  man.record("diagnostics.json");

  if (cfg.svg) {
    GradientImage img = gradient_image(u, 1.0);
    std::vector<SvgCircle> circles{{cfg.xi0, cfg.rho, "#c03030"},
                                   {cfg.xi0, 3 * cfg.rho, "#c08030"},
                                   {cfg.xi0, 4 * cfg.rho, "#30a030"}};
    svg_scatter(man.dir() + "/gradient_cloud.svg", img.points, circles);
    man.record("gradient_cloud.svg");
  }
}

void run_counterexample(const RunConfig& cfg, Manifest& man) {
  CounterexampleBundle bundle = build_counterexample();
  Json audits = Json::array();
  bool all_pass = true;
  auto audit = [&](const std::string& name, bool pass, double value,
                   const std::string& anchor) {
    audits.push_back(
        {{"name", name}, {"pass", pass}, {"value", value}, {"anchor", anchor}});
    all_pass = all_pass && pass;
  };

  audit("g(1) = 1", bundle.g(1.0) == 1.0, bundle.g(1.0), "radial profile pin");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(1e-6, 4.0);
  double worst_g = 0.0, worst_dg = 0.0;
  for (int k = 0; k < 100000; ++k) {
    double r = U(rng);
    if (std::abs(r - 1.0) < 1e-6) continue;
    worst_g = std::max(worst_g, std::abs(bundle.g(r)) / r);
    worst_dg = std::max(worst_dg, std::abs(bundle.dg(r)) / 3.0);
  }
  audit("|g(r)| < r off r=1", worst_g < 1.0, worst_g, "contractivity");
  audit("|g'(r)| < 3 off r=1", worst_dg < 1.0, worst_dg, "slope bound");

  // f_z in closed form from f = (2/3) i z^2 / |z|; unit modulus everywhere.
  double worst_fz = 0.0;
  for (int k = 0; k < 360; ++k) {
    double th = 2.0 * M_PI * k / 360.0;
    Complex z = std::polar(1.0, th);
    Complex fz = (2.0 / 3.0) * Complex(0, 1) *
                 (2.0 * z - 0.5 * z * z * std::conj(z));
    worst_fz = std::max(worst_fz, std::abs(std::abs(fz) - 1.0));
  }
  audit("| |f_z| - 1 | <= 1e-12 on S^1", worst_fz <= 1e-12, worst_fz,
        "gradient on the unit circle");

  double worst_det = 0.0;
  for (int k = 0; k < 36; ++k) {
    double th = 2.0 * M_PI * (k + 0.5) / 36.0;
    Complex z = std::polar(1.0, th);
    const double hstep = 1e-6;
    Complex dFdx = (bundle.F(z + hstep) - bundle.F(z - hstep)) / (2 * hstep);
    Complex dFdy = (bundle.F(z + Complex(0, hstep)) -
                    bundle.F(z - Complex(0, hstep))) /
                   (2 * hstep);
    double det = dFdx.real() * dFdy.imag() - dFdx.imag() * dFdy.real();
    double s2 = std::sin(2 * th);
    worst_det = std::max(worst_det, std::abs(det + s2 * s2 / 3.0));
  }
  audit("det grad F(e^{i theta}) = -(1/3) sin^2(2 theta)", worst_det <= 1e-8,
        worst_det, "degeneracy on F(S^1)");

  double worst_circle_gamma = 0.0, best_interior_gamma = 1e30;
  for (int k = 0; k < 16; ++k) {
    double th = 2.0 * M_PI * (k + 0.3) / 16.0;  // off the pi/4 grid
    GammaScan on = gamma_classify(bundle.H, std::polar(1.0, th), {1e-4});
    worst_circle_gamma = std::max(
        {worst_circle_gamma, on.min_gamma_plus[0], on.min_gamma_minus[0]});
    GammaScan in = gamma_classify(bundle.H, std::polar(0.5, th), {1e-4});
    best_interior_gamma = std::min(
        {best_interior_gamma, in.min_gamma_plus[0], in.min_gamma_minus[0]});
  }
  audit("gammas < 0.05 on S^1 at scale 1e-4", worst_circle_gamma < 0.05,
        worst_circle_gamma, "Gamma_pm degeneracy");
  audit("gammas > 0.2 at r=1/2", best_interior_gamma > 0.2,
        best_interior_gamma, "interior ellipticity");

  auto rows = counterexample_stilde_audit(bundle, {M_PI / 3.0});
  double rel = std::abs(rows[0].max_symmetric_quotient - 8.0 / 3.0) / (8.0 / 3.0);
  audit("symmetric quotient near F(e^{i pi/3}) within 10% of 8/3", rel < 0.10,
        rows[0].max_symmetric_quotient, "S-tilde blow-up rate");

  write_json_file(man.dir() + "/counterexample.json",
                  {{"audits", audits}, {"all_pass", all_pass}});
  man.record("counterexample.json");

  if (cfg.svg) {
    std::vector<PlaneVec> curve;
    for (int k = 0; k <= 720; ++k) {
      Complex w = bundle.F(std::polar(1.0, 2.0 * M_PI * k / 720.0));
      curve.push_back({w.real(), w.imag()});
    }
    svg_scatter(man.dir() + "/f_of_circle.svg", {}, {}, {curve});
    man.record("f_of_circle.svg");
  }

  if (!all_pass) throw AuditFailure("counterexample audit failed");
}

void run_certify(const RunConfig& cfg, Manifest& man) {
  MonotoneField field = parse_field_expr(cfg.field_expr);
  EllipticityProfile prof =
      sample_ellipticity(field, cfg.box, cfg.grid_step, cfg.scales);
  CoveringCertificate cover = build_covering(prof, cfg.M, cfg.r, cfg.lambda,
                                             cfg.Lambda, cfg.centers);

  auto domain = build_disc_mesh(cfg.h);
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.mollify_eps = cfg.mollify_eps;
  auto [u, rep] =
      solve_dirichlet(field, domain, parse_boundary(cfg.boundary), opts);
  double grad_l2 = 0.0, G_grad_l2 = 0.0;
  for (std::size_t t = 0; t < domain->tris.size(); ++t) {
    PlaneVec g = u.gradient((int)t);
    grad_l2 += domain->tris[t].area * g.norm2();
    G_grad_l2 += domain->tris[t].area * field(g).norm2();
  }
  grad_l2 = std::sqrt(grad_l2);
  G_grad_l2 = std::sqrt(G_grad_l2);

  double floor = cfg.monotony_floor;
  if (floor <= 0.0) {
    floor = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 8; ++k) {
      double t = cover.eta / 4.0 +
                 (cfg.M + cover.eta - cover.eta / 4.0) * k / 7.0;
      floor = std::min(
          floor, modulus_of_monotony(field, t, 2.0 * cfg.M, 20000, cfg.seed) / t);
    }
  }

  RadiusCertificate rc = certified_radius(cover, grad_l2, G_grad_l2, cfg.c0,
                                          cfg.c_iter, floor);
  Json j;
  j["covering"] = {{"M", cover.M},
                   {"r", cover.r},
                   {"lambda", cover.lambda},
                   {"Lambda", cover.Lambda},
                   {"eta", cover.eta},
                   {"grid_step", cover.grid_step},
                   {"grid_points_checked", cover.grid_points_checked}};
  j["norms"] = {{"grad_l2", grad_l2}, {"G_grad_l2", G_grad_l2}};
  j["radius"] = {{"delta_single", rc.delta_single},
                 {"log10_delta_single", rc.log10_delta_single},
                 {"K", rc.K},
                 {"delta_final", rc.delta_final},
                 {"log10_delta_final", rc.log10_delta_final},
                 {"C_O", rc.C_O},
                 {"C_V", rc.C_V},
                 {"c0", rc.c0},
                 {"c_iter", rc.c_iter},
                 {"monotony_floor", rc.monotony_floor},
                 {"conditional_on", "(c0, c_iter)"}};
  write_json_file(man.dir() + "/radius.json", j);
  man.record("radius.json");
}

}  // namespace

std::function<double(double)> parse_boundary(const std::string& spec) {
  std::string kind = spec;
  std::string arg;
  if (auto pos = spec.find(':'); pos != std::string::npos) {
    kind = spec.substr(0, pos);
    arg = spec.substr(pos + 1);
  }
  if (kind == "zero") return [](double) { return 0.0; };
  if (kind == "cos") {
    double k = arg.empty() ? 1.0 : std::stod(arg);
    return [k](double th) { return std::cos(k * th); };
  }
  if (kind == "sin") {
    double k = arg.empty() ? 1.0 : std::stod(arg);
    return [k](double th) { return std::sin(k * th); };
  }
  if (kind == "affine") {
    std::stringstream ss(arg);
    std::vector<double> c;
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(std::stod(tok));
    if (c.size() != 3)
      throw ConfigError("affine boundary needs 'ax,ay,b', got '" + spec + "'");
    return [c](double th) {
      return c[0] * std::cos(th) + c[1] * std::sin(th) + c[2];
    };
  }
  if (kind == "counterexample")
    return [](double th) { return -std::sin(2.0 * th) / 3.0; };
  throw ConfigError("unknown boundary spec '" + spec + "'");
}

OutputBundle run_scenario(const RunConfig& cfg) {
  std::string root = cfg.output_dir;
  if (root.empty()) {
    const char* env = std::getenv("MONO2D_OUTPUT_ROOT");
    root = (fs::path(env ? env : "out") /
            (std::string(scenario_name(cfg.scenario)) + "_" + cfg.label))
               .string();
  }

  Manifest man(root);
  man.set_config_echo(echo_config(cfg));
  OutputBundle bundle{root, 0, "ok"};
  auto t0 = std::chrono::steady_clock::now();
  try {
    switch (cfg.scenario) {
      case Scenario::catalog: run_catalog(cfg, man); break;
      case Scenario::classify: run_classify(cfg, man); break;
      case Scenario::transform: run_transform(cfg, man); break;
      case Scenario::solve: run_solve(cfg, man); break;
      case Scenario::diagnose: run_diagnose(cfg, man); break;
      case Scenario::counterexample: run_counterexample(cfg, man); break;
      case Scenario::certify: run_certify(cfg, man); break;
    }
    man.set_status("ok");
  } catch (const AuditFailure& e) {
    bundle = {root, 4, e.what()};
    man.set_status("audit_failure", e.what());
  } catch (const ConfigError& e) {
    bundle = {root, 2, e.what()};
    man.set_status("config_error", e.what());
  } catch (const std::invalid_argument& e) {
    bundle = {root, 2, e.what()};
    man.set_status("config_error", e.what());
  } catch (const std::exception& e) {
    bundle = {root, 3, e.what()};
    man.set_status("numerical_failure", e.what());
  }
  man.set_wall_ms(std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count());
  man.save();
  return bundle;
}

std::string report_bundle(const std::string& bundle_dir) {
  fs::path manifest = fs::path(bundle_dir) / "manifest.json";
  std::ifstream in(manifest);
  if (!in)
    throw ConfigError("no manifest.json in '" + bundle_dir + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("corrupt manifest: " + std::string(e.what()));
  }

  std::ostringstream os;
  os << "bundle: " << bundle_dir << "\n";
  os << "scenario: " << j["config"].value("scenario", "?") << "  status: "
     << j.value("status", "?") << "\n";
  if (j.contains("error")) os << "error: " << j["error"].get<std::string>() << "\n";
  for (const auto& f : j.value("files", Json::array()))
    os << "  " << f.value("name", "?") << "  " << f.value("bytes", 0)
       << " bytes  hash " << f.value("hash", "?") << "\n";

  auto read_json = [&](const char* name, Json& out) {
    std::ifstream fin(fs::path(bundle_dir) / name);
    if (!fin) return false;
    fin >> out;
    return true;
  };
  Json extra;
  if (read_json("counterexample.json", extra)) {
    os << "audits:\n";
    for (const auto& a : extra["audits"])
      os << "  [" << (a["pass"].get<bool>() ? "PASS" : "FAIL") << "] "
         << a["name"].get<std::string>() << " (value "
         << a["value"].get<double>() << ", " << a["anchor"].get<std::string>()
         << ")\n";
  }
  if (read_json("bad_set.json", extra))
    os << "bad-set components: " << extra["components"].size() << "\n";
  if (read_json("solve.json", extra))
    os << "solve: residual " << extra["residual_norm"].get<double>()
       << ", iterations " << extra["iterations"].get<int>() << ", strategy "
       << extra["strategy"].get<std::string>() << ", Lip "
       << extra["lipschitz_estimate"].get<double>() << "\n";
  if (read_json("radius.json", extra))
    os << "radius: log10(delta_final) = "
       << extra["radius"]["log10_delta_final"].get<double>() << " with K = "
       << extra["radius"]["K"].get<int>() << "\n";
  return os.str();
}

}  // namespace mono2d
