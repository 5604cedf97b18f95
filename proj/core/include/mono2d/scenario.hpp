#pragma once

#include <string>

#include "mono2d/config.hpp"

namespace mono2d {

struct OutputBundle {
  std::string dir;
  int exit_code = 0;  // 0 ok, 2 config, 3 numerical, 4 audit failure
  std::string message;
};

/// Dispatches one scenario run; always writes a manifest, even on failure.
OutputBundle run_scenario(const RunConfig& cfg);

/// Human-readable summary of a finished bundle directory.
std::string report_bundle(const std::string& bundle_dir);

/// Boundary-data parser shared with tests: "cos:k", "sin:k",
/// "affine:ax,ay,b", "counterexample", "zero".
std::function<double(double)> parse_boundary(const std::string& spec);

}  // namespace mono2d
