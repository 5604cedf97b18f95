#include "mono2d/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace mono2d {

namespace fs = std::filesystem;

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_hash: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 14];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= (unsigned char)buf[i];
      h *= 0x100000001b3ull;
    }
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_text: cannot open " + path);
  out << content;
}

void write_json_file(const std::string& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

}  // namespace

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i)
    buf_ += (i ? "," : "") + header[i];
  buf_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    buf_ += (i ? "," : "") + fmt(values[i]);
  buf_ += "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
  if (values.size() != columns_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    buf_ += (i ? "," : "") + values[i];
  buf_ += "\n";
}

void CsvWriter::save(const std::string& path) const { write_text(path, buf_); }

namespace {

struct View {
  double x0, y0, x1, y1;
  static constexpr double size = 600.0;
  double px(double x) const { return size * (x - x0) / (x1 - x0); }
  double py(double y) const { return size * (y1 - y) / (y1 - y0); }
};

View fit_view(double x0, double y0, double x1, double y1) {
  double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
  double s = std::max(w, h);
  double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  double m = 0.55 * s;  // square view with a margin
  return {cx - m, cy - m, cx + m, cy + m};
}

std::string color_for(double t) {  // 0 -> blue, 1 -> red
  t = std::clamp(t, 0.0, 1.0);
  int r = (int)std::lround(255 * t);
  int b = (int)std::lround(255 * (1 - t));
  int g = (int)std::lround(90 + 60 * (1 - std::abs(2 * t - 1)));
  char s[8];
  std::snprintf(s, sizeof s, "#%02x%02x%02x", r, g, b);
  return s;
}

}  // namespace

void svg_scatter(const std::string& path, const std::vector<PlaneVec>& points,
                 const std::vector<SvgCircle>& circles,
                 const std::vector<std::vector<PlaneVec>>& polylines) {
  double x0 = 1e30, y0 = 1e30, x1 = -1e30, y1 = -1e30;
  auto grow = [&](PlaneVec p, double r) {
    x0 = std::min(x0, p.x - r);
    y0 = std::min(y0, p.y - r);
    x1 = std::max(x1, p.x + r);
    y1 = std::max(y1, p.y + r);
  };
  for (PlaneVec p : points) grow(p, 0);
  for (const auto& c : circles) grow(c.center, c.radius);
  for (const auto& pl : polylines)
    for (PlaneVec p : pl) grow(p, 0);
  if (x0 > x1) { x0 = y0 = -1; x1 = y1 = 1; }
  View v = fit_view(x0, y0, x1, y1);

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='600' height='600' "
        "viewBox='0 0 600 600'>\n<rect width='600' height='600' fill='white'/>\n";
  for (const auto& c : circles)
    os << "<circle cx='" << v.px(c.center.x) << "' cy='" << v.py(c.center.y)
       << "' r='" << View::size * c.radius / (v.x1 - v.x0)
       << "' fill='none' stroke='" << c.color << "'/>\n";
  for (const auto& pl : polylines) {
    os << "<polyline fill='none' stroke='#208020' stroke-width='1.5' points='";
    for (PlaneVec p : pl) os << v.px(p.x) << "," << v.py(p.y) << " ";
    os << "'/>\n";
  }
  for (PlaneVec p : points)
    os << "<circle cx='" << v.px(p.x) << "' cy='" << v.py(p.y)
       << "' r='1.6' fill='#303080'/>\n";
  os << "</svg>\n";
  write_text(path, os.str());
}

void svg_heatmap(const std::string& path, int nx, int ny,
                 const std::vector<double>& values, double x0, double y0,
                 double x1, double y1) {
  if ((int)values.size() != nx * ny)
    throw std::invalid_argument("svg_heatmap: size mismatch");
  double lo = 1e300, hi = -1e300;
  for (double d : values)
    if (std::isfinite(d)) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  if (lo > hi) { lo = 0; hi = 1; }
  View v = fit_view(x0, y0, x1, y1);
  double cw = View::size * (x1 - x0) / (nx * (v.x1 - v.x0));
  double ch = View::size * (y1 - y0) / (ny * (v.y1 - v.y0));

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='600' height='600' "
        "viewBox='0 0 600 600'>\n<rect width='600' height='600' fill='white'/>\n";
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double d = values[(std::size_t)j * nx + i];
      std::string col = std::isfinite(d)
                            ? color_for(hi > lo ? (d - lo) / (hi - lo) : 0.5)
                            : "#aaaaaa";
      double cx = x0 + (i + 0.5) * (x1 - x0) / nx;
      double cy = y0 + (j + 0.5) * (y1 - y0) / ny;
      os << "<rect x='" << v.px(cx) - cw / 2 << "' y='" << v.py(cy) - ch / 2
         << "' width='" << cw << "' height='" << ch << "' fill='" << col
         << "'/>\n";
    }
  os << "</svg>\n";
  write_text(path, os.str());
}

void svg_contour(const std::string& path, const GridFunction& u, int levels) {
  const DiscDomain& dom = *u.domain;
  double lo = 1e300, hi = -1e300;
  for (double d : u.values) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (hi <= lo) hi = lo + 1;
  View v = fit_view(-1, -1, 1, 1);

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='600' height='600' "
        "viewBox='0 0 600 600'>\n<rect width='600' height='600' fill='white'/>\n";
  for (const auto& t : dom.tris) {
    double avg = (u.values[t.v[0]] + u.values[t.v[1]] + u.values[t.v[2]]) / 3.0;
    os << "<polygon fill='" << color_for((avg - lo) / (hi - lo))
       << "' stroke='none' points='";
    for (int k = 0; k < 3; ++k) {
      PlaneVec p = dom.nodes[t.v[k]];
      os << v.px(p.x) << "," << v.py(p.y) << " ";
    }
    os << "'/>\n";
  }
  // Iso-lines are exact on P1: each triangle contributes one segment per level.
  for (int l = 1; l < levels; ++l) {
    double L = lo + (hi - lo) * l / levels;
    os << "<g stroke='#222222' stroke-width='0.8'>\n";
    for (const auto& t : dom.tris) {
      PlaneVec pts[2];
      int n = 0;
      for (int k = 0; k < 3 && n < 2; ++k) {
        double a = u.values[t.v[k]] - L, b = u.values[t.v[(k + 1) % 3]] - L;
        if ((a < 0) == (b < 0) || a == b) continue;
        double s = a / (a - b);
        PlaneVec pa = dom.nodes[t.v[k]], pb = dom.nodes[t.v[(k + 1) % 3]];
        pts[n++] = pa + s * (pb - pa);
      }
      if (n == 2)
        os << "<line x1='" << v.px(pts[0].x) << "' y1='" << v.py(pts[0].y)
           << "' x2='" << v.px(pts[1].x) << "' y2='" << v.py(pts[1].y)
           << "'/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  write_text(path, os.str());
}

Manifest::Manifest(std::string dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  extra_["status"] = "incomplete";
}

void Manifest::set_config_echo(const Json& j) { extra_["config"] = j; }

void Manifest::record(const std::string& filename) { files_.push_back(filename); }

void Manifest::set_status(const std::string& status, const std::string& error) {
  extra_["status"] = status;
  if (!error.empty()) extra_["error"] = error;
}

void Manifest::set_wall_ms(double ms) { extra_["wall_ms"] = ms; }

void Manifest::add_note(const std::string& key, const Json& value) {
  extra_["notes"][key] = value;
}

void Manifest::save() const {
  Json j = extra_;
  j["version"] = "0.1.0";
  j["files"] = Json::array();
  for (const std::string& f : files_) {
    fs::path p = fs::path(dir_) / f;
    Json entry;
    entry["name"] = f;
    entry["bytes"] = fs::exists(p) ? (std::uint64_t)fs::file_size(p) : 0;
    entry["hash"] = fs::exists(p) ? file_hash(p.string()) : "missing";
    j["files"].push_back(entry);
  }
  write_json_file((fs::path(dir_) / "manifest.json").string(), j);
}

}  // namespace mono2d
