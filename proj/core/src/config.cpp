#include "mono2d/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "mono2d/beltrami.hpp"
#include "mono2d/transforms.hpp"

namespace mono2d {

namespace {

// ---- field expression parsing ----

struct Lexer {
  std::string s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ConfigError("field expression: expected '" + std::string(1, c) +
                        "' near position " + std::to_string(i) + " in '" + s + "'");
  }
  std::string ident() {
    skip();
    std::size_t start = i;
    while (i < s.size() &&
           (std::isalnum((unsigned char)s[i]) || s[i] == '_' || s[i] == '.' ||
            s[i] == '-' || s[i] == '+'))
      ++i;
    if (start == i)
      throw ConfigError("field expression: expected a name near position " +
                        std::to_string(i) + " in '" + s + "'");
    return s.substr(start, i - start);
  }
};

double to_double(const std::string& v, const std::string& what) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + what + ", got '" + v + "'");
  }
}

ProfileSpec parse_profile(const std::string& v) {
  std::string kind = v;
  double param = 1.0;
  if (auto pos = v.find(':'); pos != std::string::npos) {
    kind = v.substr(0, pos);
    param = to_double(v.substr(pos + 1), "profile parameter");
  }
  ProfileSpec ps;
  ps.param = param;
  if (kind == "linear")
    ps.kind = ProfileSpec::Kind::linear;
  else if (kind == "cubic")
    ps.kind = ProfileSpec::Kind::cubic;
  else if (kind == "plateau")
    ps.kind = ProfileSpec::Kind::plateau;
  else if (kind == "power")
    ps.kind = ProfileSpec::Kind::power;
  else
    throw ConfigError("unknown profile kind '" + kind + "'");
  return ps;
}

MonotoneField parse_expr(Lexer& lex);

MonotoneField parse_call(Lexer& lex, const std::string& name) {
  // Transform wrappers take an inner expression first.
  if (name == "mollify" || name == "modify" || name == "dual") {
    lex.expect('(');
    MonotoneField inner = parse_expr(lex);
    double eps = 0.05, M = 1.0;
    while (lex.accept(',')) {
      std::string key = lex.ident();
      lex.expect('=');
      std::string val = lex.ident();
      if (key == "eps")
        eps = to_double(val, "eps");
      else if (key == "M")
        M = to_double(val, "M");
      else
        throw ConfigError("unknown transform argument '" + key + "'");
    }
    lex.expect(')');
    if (name == "mollify") return mollify(inner, {.epsilon = eps});
    if (name == "modify") return modify_at_infinity(inner, M).first;
    return dual_field(inner);
  }

  FieldSpec spec;
  if (name == "identity")
    spec.kind = FieldKind::identity;
  else if (name == "p_laplacian")
    spec.kind = FieldKind::p_laplacian;
  else if (name == "rotational_gm")
    spec.kind = FieldKind::rotational_gm;
  else if (name == "g0_cubic")
    spec.kind = FieldKind::g0_cubic;
  else if (name == "separable")
    spec.kind = FieldKind::separable;
  else if (name == "pathological_sin")
    spec.kind = FieldKind::pathological_sin;
  else if (name == "counterexample_s6")
    spec.kind = FieldKind::counterexample_s6;
  else
    throw ConfigError("unknown field '" + name + "'");

  if (lex.accept('(')) {
    if (!lex.accept(')')) {
      do {
        std::string key = lex.ident();
        std::string val;
        if (lex.accept('=')) {
          val = lex.ident();
        } else {
          // bare positional number, e.g. p_laplacian(4)
          val = key;
          key = (spec.kind == FieldKind::p_laplacian)   ? "p"
                : (spec.kind == FieldKind::rotational_gm) ? "m"
                                                          : "?";
        }
        if (key == "p")
          spec.p = to_double(val, "p");
        else if (key == "m")
          spec.m = to_double(val, "m");
        else if (key == "f")
          spec.fx = parse_profile(val);
        else if (key == "g")
          spec.gy = parse_profile(val);
        else
          throw ConfigError("unknown field argument '" + key + "' for " + name);
      } while (lex.accept(','));
      lex.expect(')');
    }
  }
  return make_catalog_field(spec);
}

MonotoneField parse_expr(Lexer& lex) { return parse_call(lex, lex.ident()); }

// ---- run config parsing ----

std::vector<double> parse_list(const std::string& v, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(to_double(tok, what));
  return out;
}

std::vector<PlaneVec> parse_centers(const std::string& v) {
  std::vector<PlaneVec> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.empty()) continue;
    std::vector<double> xy = parse_list(tok, "center");
    if (xy.size() != 2) throw ConfigError("center must be 'x,y', got '" + tok + "'");
    out.push_back({xy[0], xy[1]});
  }
  return out;
}

Scenario parse_scenario(const std::string& v) {
  if (v == "catalog") return Scenario::catalog;
  if (v == "classify") return Scenario::classify;
  if (v == "transform") return Scenario::transform;
  if (v == "solve") return Scenario::solve;
  if (v == "diagnose") return Scenario::diagnose;
  if (v == "counterexample") return Scenario::counterexample;
  if (v == "certify") return Scenario::certify;
  throw ConfigError("unknown scenario '" + v + "'");
}

bool parse_bool(const std::string& v, const std::string& what) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError("expected a boolean for " + what + ", got '" + v + "'");
}

void apply(RunConfig& cfg, const std::string& key, const std::string& val) {
  if (key == "scenario")
    cfg.scenario = parse_scenario(val);
  else if (key == "field")
    cfg.field_expr = val;
  else if (key == "label")
    cfg.label = val;
  else if (key == "h")
    cfg.h = to_double(val, key);
  else if (key == "boundary")
    cfg.boundary = val;
  else if (key == "tol")
    cfg.tol = to_double(val, key);
  else if (key == "mollify_eps")
    cfg.mollify_eps = to_double(val, key);
  else if (key == "continuation")
    cfg.continuation = parse_list(val, key);
  else if (key == "box") {
    std::vector<double> b = parse_list(val, key);
    if (b.size() != 4) throw ConfigError("box must be 'x0,y0,x1,y1'");
    cfg.box = {b[0], b[1], b[2], b[3]};
  } else if (key == "grid_step")
    cfg.grid_step = to_double(val, key);
  else if (key == "scales")
    cfg.scales = parse_list(val, key);
  else if (key == "lambda")
    cfg.lambda = to_double(val, key);
  else if (key == "Lambda")
    cfg.Lambda = to_double(val, key);
  else if (key == "r")
    cfg.r = to_double(val, key);
  else if (key == "M")
    cfg.M = to_double(val, key);
  else if (key == "centers")
    cfg.centers = parse_centers(val);
  else if (key == "c0")
    cfg.c0 = to_double(val, key);
  else if (key == "c_iter")
    cfg.c_iter = to_double(val, key);
  else if (key == "monotony_floor")
    cfg.monotony_floor = to_double(val, key);
  else if (key == "deltas")
    cfg.deltas = parse_list(val, key);
  else if (key == "rho")
    cfg.rho = to_double(val, key);
  else if (key == "xi0") {
    std::vector<double> xy = parse_list(val, key);
    if (xy.size() != 2) throw ConfigError("xi0 must be 'x,y'");
    cfg.xi0 = {xy[0], xy[1]};
  } else if (key == "seed")
    cfg.seed = std::stoull(val, nullptr, 0);
  else if (key == "output_dir")
    cfg.output_dir = val;
  else if (key == "svg")
    cfg.svg = parse_bool(val, key);
  else
    throw ConfigError("unknown config key '" + key + "'");
}

std::pair<std::string, std::string> split_kv(const std::string& line) {
  auto pos = line.find('=');
  if (pos == std::string::npos)
    throw ConfigError("expected 'key = value', got '" + line + "'");
  auto trim = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
  };
  return {trim(line.substr(0, pos)), trim(line.substr(pos + 1))};
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::vector<std::string>& overrides) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto [k, v] = split_kv(line);
    apply(cfg, k, v);
  }
  for (const std::string& ov : overrides) {
    auto [k, v] = split_kv(ov);
    apply(cfg, k, v);
  }
  if (!(cfg.h > 0.0 && cfg.h <= 0.5)) throw ConfigError("h must be in (0, 0.5]");
  if (cfg.scales.empty()) throw ConfigError("scales must be nonempty");
  if (cfg.label.empty()) cfg.label = "run";
  return cfg;
}

RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides);
}

MonotoneField parse_field_expr(const std::string& expr) {
  Lexer lex{expr};
  MonotoneField f = parse_expr(lex);
  if (!lex.eof())
    throw ConfigError("trailing input in field expression '" + expr + "'");
  return f;
}

}  // namespace mono2d
