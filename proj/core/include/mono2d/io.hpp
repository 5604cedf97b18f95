#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "mono2d/fem.hpp"
#include "mono2d/plane_vec.hpp"

namespace mono2d {

using Json = nlohmann::json;

/// FNV-1a 64 over the file bytes, hex string; the manifest content hash.
std::string file_hash(const std::string& path);

void write_text(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const Json& j);

/// Minimal CSV emitter; numbers are printed with max_digits10 so reruns are
/// bit-identical.
struct CsvWriter {
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);
  void save(const std::string& path) const;

 private:
  std::string buf_;
  std::size_t columns_;
};

struct SvgCircle {
  PlaneVec center;
  double radius;
  std::string color = "#888888";
};

void svg_scatter(const std::string& path, const std::vector<PlaneVec>& points,
                 const std::vector<SvgCircle>& circles = {},
                 const std::vector<std::vector<PlaneVec>>& polylines = {});

/// Row-major grid heatmap over [x0,x1]x[y0,y1]; non-finite cells are gray.
void svg_heatmap(const std::string& path, int nx, int ny,
                 const std::vector<double>& values, double x0, double y0,
                 double x1, double y1);

/// Filled triangulation colored by nodal values with P1-exact iso-lines.
void svg_contour(const std::string& path, const GridFunction& u, int levels = 12);

/// Records emitted files and writes manifest.json; forensics-first, written
/// even when the scenario failed.
class Manifest {
 public:
  explicit Manifest(std::string dir);
  void set_config_echo(const Json& j);
  void record(const std::string& filename);  // relative to dir
  void set_status(const std::string& status, const std::string& error = "");
  void set_wall_ms(double ms);
  void add_note(const std::string& key, const Json& value);
  void save() const;
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::vector<std::string> files_;
  Json extra_;
};

}  // namespace mono2d
