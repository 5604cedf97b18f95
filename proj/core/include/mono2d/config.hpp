#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mono2d/classify.hpp"
#include "mono2d/field.hpp"

namespace mono2d {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario {
  catalog,
  classify,
  transform,
  solve,
  diagnose,
  counterexample,
  certify,
};

struct RunConfig {
  Scenario scenario = Scenario::catalog;
  std::string field_expr = "identity";
  std::string label;  // run label, defaults to the scenario name

  double h = 1.0 / 16;
  std::string boundary = "cos:2";  // cos:k, sin:k, affine:ax,ay,b, counterexample
  double tol = 1e-9;
  double mollify_eps = 0.0;
  std::vector<double> continuation;

  Rect box{-1, -1, 1, 1};
  double grid_step = 0.1;
  std::vector<double> scales{0.5, 0.25, 0.1};
  double lambda = 0.1, Lambda = 10.0, r = 0.2, M = 1.0;
  std::vector<PlaneVec> centers;
  double c0 = 1.0, c_iter = 1.0;
  double monotony_floor = 0.0;  // 0: estimated via modulus_of_monotony

  std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
  double rho = 1.0;
  PlaneVec xi0{10.0, 0.0};

  std::uint64_t seed = 0x5eed;
  std::string output_dir;  // empty: MONO2D_OUTPUT_ROOT or ./out, plus label
  bool svg = true;
};

/// key = value per line, '#' comments; overrides applied afterwards.
/// Unknown keys are rejected.
RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides = {});

RunConfig parse_config_text(const std::string& text,
                            const std::vector<std::string>& overrides = {});

/// Field expressions: catalog names with optional parameters plus transform
/// wrappers, e.g. "mollify(modify(g0_cubic, M=2), eps=0.05)" or
/// "separable(f=cubic, g=plateau)" or "dual(p_laplacian(p=4))".
MonotoneField parse_field_expr(const std::string& expr);

}  // namespace mono2d
