#include "tff/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <toml.hpp>

namespace tff {

using nlohmann::json;

namespace {

json toml_to_json(const toml::node& n) {
  if (auto t = n.as_table()) {
    json j = json::object();
    for (auto&& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v);
    return j;
  }
  if (auto a = n.as_array()) {
    json j = json::array();
    for (auto&& v : *a) j.push_back(toml_to_json(v));
    return j;
  }
  if (auto v = n.as_integer()) return v->get();
  if (auto v = n.as_floating_point()) return v->get();
  if (auto v = n.as_boolean()) return v->get();
  if (auto v = n.as_string()) return v->get();
  throw ConfigError("unsupported TOML value type (dates are not accepted)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Reader over one section that rejects unknown keys.
class Section {
 public:
  Section(const json& root, std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
      j_ = root;
    } else if (root.contains(name_)) {
      j_ = root.at(name_);
      if (!j_.is_object()) throw ConfigError("[" + name_ + "] must be a table");
    } else {
      j_ = json::object();
    }
  }

  bool has(const std::string& k) {
    seen_.insert(k);
    return j_.contains(k);
  }

  double num(const std::string& k, double def) {
    if (!has(k)) return def;
    const json& v = j_.at(k);
    if (!v.is_number()) fail(k, "expected a number");
    return v.get<double>();
  }

  long integer(const std::string& k, long def) {
    if (!has(k)) return def;
    const json& v = j_.at(k);
    if (!v.is_number_integer()) fail(k, "expected an integer");
    return v.get<long>();
  }

  bool boolean(const std::string& k, bool def) {
    if (!has(k)) return def;
    const json& v = j_.at(k);
    if (!v.is_boolean()) fail(k, "expected true or false");
    return v.get<bool>();
  }

  std::string str(const std::string& k, const std::string& def) {
    if (!has(k)) return def;
    const json& v = j_.at(k);
    if (!v.is_string()) fail(k, "expected a string");
    return v.get<std::string>();
  }

  Vec2 vec(const std::string& k, Vec2 def) {
    if (!has(k)) return def;
    return to_vec(j_.at(k), k);
  }

  std::vector<Vec2> vecs(const std::string& k) {
    std::vector<Vec2> out;
    if (!has(k)) return out;
    const json& v = j_.at(k);
    if (!v.is_array()) fail(k, "expected an array of [x, y] pairs");
    for (const auto& e : v) out.push_back(to_vec(e, k));
    return out;
  }

  std::vector<double> nums(const std::string& k) {
    std::vector<double> out;
    if (!has(k)) return out;
    const json& v = j_.at(k);
    if (!v.is_array()) fail(k, "expected an array of numbers");
    for (const auto& e : v) {
      if (!e.is_number()) fail(k, "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) {
        if (name_.empty() && it.value().is_object()) continue;
        fail(it.key(), "unknown key");
      }
  }

 private:
  [[noreturn]] void fail(const std::string& k, const std::string& m) const {
    throw ConfigError((name_.empty() ? k : name_ + "." + k) + ": " + m);
  }

  Vec2 to_vec(const json& v, const std::string& k) const {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail(k, "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  json j_;
  std::string name_;
  std::set<std::string> seen_;
};

RunConfig from_json(const json& root) {
  if (!root.is_object()) throw ConfigError("config root must be a table");
  static const std::set<std::string> sections = {"domain", "density", "square", "far", "near",
                                                 "window", "output", "cache", "run"};
  for (auto it = root.begin(); it != root.end(); ++it)
    if (it.value().is_object() && !sections.count(it.key())) throw ConfigError("unknown section [" + it.key() + "]");

  RunConfig c;
  {
    Section s(root, "");
    std::string m = s.str("mode", "eval");
    if (m == "eval") c.mode = RunMode::Eval;
    else if (m == "convergence") c.mode = RunMode::Convergence;
    else if (m == "selftest") c.mode = RunMode::Selftest;
    else throw ConfigError("mode: expected eval, convergence or selftest");
    s.finish();
  }
  {
    Section s(root, "domain");
    DomainSpec& d = c.domain;
    d.kind = s.str("kind", d.kind);
    d.lx = s.num("lx", d.lx);
    d.ly = s.num("ly", d.ly);
    d.radius = s.num("radius", d.radius);
    d.a = s.num("a", d.a);
    d.b = s.num("b", d.b);
    d.center = s.vec("center", d.center);
    d.points = s.vecs("points");
    for (double v : s.nums("corners")) {
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ConfigError("domain.corners: expected point indices");
      d.corners.push_back(static_cast<std::size_t>(v));
    }
    s.finish();
  }
  {
    Section s(root, "density");
    DensitySpec& d = c.density;
    d.kind = s.str("kind", d.kind);
    d.scale = s.num("scale", d.scale);
    d.lo = s.vec("lo", d.lo);
    d.hi = s.vec("hi", d.hi);
    d.nx = static_cast<std::size_t>(s.integer("nx", 0));
    d.ny = static_cast<std::size_t>(s.integer("ny", 0));
    d.values = s.nums("values");
    d.file = s.str("file", "");
    s.finish();
  }
  {
    Section s(root, "square");
    std::string p = s.str("policy", "auto");
    if (p == "auto") c.square.policy = SquarePolicy::Auto;
    else if (p == "wide") c.square.policy = SquarePolicy::Wide;
    else if (p == "explicit") c.square.policy = SquarePolicy::Explicit;
    else throw ConfigError("square.policy: expected auto, wide or explicit");
    c.square.pad = s.num("pad", c.square.pad);
    c.square.lo = s.vec("lo", c.square.lo);
    c.square.period = s.vec("period", c.square.period);
    s.finish();
  }
  {
    Section s(root, "far");
    c.F = static_cast<int>(s.integer("F", c.F));
    bool a = s.has("w0p"), b = s.has("w1p");
    if (a != b) throw ConfigError("far: w0p and w1p must be given together");
    if (a) c.kernel = WindowParams{s.num("w0p", 0), s.num("w1p", 0)};
    a = s.has("density_w0");
    b = s.has("density_w1");
    if (a != b) throw ConfigError("far: density_w0 and density_w1 must be given together");
    if (a) c.density_window = WindowParams{s.num("density_w0", 0), s.num("density_w1", 0)};
    long nodes = s.integer("charfun_nodes", 0);
    if (nodes < 0) throw ConfigError("far.charfun_nodes must be >= 0");
    c.charfun_nodes = static_cast<std::size_t>(nodes);
    s.finish();
  }
  {
    Section s(root, "near");
    c.F_r = static_cast<int>(s.integer("F_r", 0));
    c.F_theta = static_cast<int>(s.integer("F_theta", 0));
    c.corner_correction = s.boolean("corner_correction", true);
    s.finish();
  }
  {
    Section s(root, "window");
    c.window.w0 = s.num("w0", c.window.w0);
    c.window.w1 = s.num("w1", c.window.w1);
    s.finish();
  }
  {
    Section s(root, "output");
    long n = s.integer("grid_n", static_cast<long>(c.grid_n));
    if (n < 2) throw ConfigError("output.grid_n must be >= 2");
    c.grid_n = static_cast<std::size_t>(n);
    c.out_dir = s.str("dir", c.out_dir);
    c.gnuplot = s.boolean("gnuplot", c.gnuplot);
    s.finish();
  }
  {
    Section s(root, "cache");
    c.cache_dir = s.str("dir", "");
    s.finish();
  }
  {
    Section s(root, "run");
    c.threads = static_cast<int>(s.integer("threads", 0));
    c.debug_dump = s.boolean("debug_dump", false);
    s.finish();
  }
  return c;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  return from_json(j);
}

RunConfig parse_config_toml(const std::string& text) {
  toml::table t;
  try {
    t = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML parse error at line " << e.source().begin.line << ": " << e.description();
    throw ConfigError(os.str());
  }
  return from_json(toml_to_json(t));
}

RunConfig load_config(const std::string& path) {
  std::string text = read_file(path);
  auto ends = [&](const std::string& s) {
    return path.size() >= s.size() && std::equal(s.rbegin(), s.rend(), path.rbegin());
  };
  RunConfig c;
  if (ends(".json")) c = parse_config_json(text);
  else if (ends(".toml")) c = parse_config_toml(text);
  else throw ConfigError("config must be .toml or .json: " + path);
  if (!c.density.file.empty() && c.density.values.empty()) {
    std::string dir = path.substr(0, path.find_last_of('/') + 1);
    std::string f = c.density.file[0] == '/' ? c.density.file : dir + c.density.file;
    std::istringstream in(read_file(f));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      std::istringstream line(tok);
      std::string part;
      while (line >> part) c.density.values.push_back(std::stod(part));
    }
  }
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["mode"] = c.mode == RunMode::Eval ? "eval" : c.mode == RunMode::Convergence ? "convergence" : "selftest";
  json d = {{"kind", c.domain.kind}};
  if (c.domain.kind == "teardrop") { d["lx"] = c.domain.lx; d["ly"] = c.domain.ly; }
  if (c.domain.kind == "disk") { d["radius"] = c.domain.radius; d["center"] = vec_json(c.domain.center); }
  if (c.domain.kind == "ellipse") {
    d["a"] = c.domain.a;
    d["b"] = c.domain.b;
    d["center"] = vec_json(c.domain.center);
  }
  if (c.domain.kind == "polyline") {
    d["points"] = json::array();
    for (Vec2 p : c.domain.points) d["points"].push_back(vec_json(p));
    d["corners"] = c.domain.corners;
  }
  j["domain"] = d;
  json den = {{"kind", c.density.kind}, {"scale", c.density.scale}};
  if (c.density.kind == "tabulated") {
    den["lo"] = vec_json(c.density.lo);
    den["hi"] = vec_json(c.density.hi);
    den["nx"] = c.density.nx;
    den["ny"] = c.density.ny;
    den["values"] = c.density.values;
  }
  j["density"] = den;
  json sq = {{"policy", c.square.policy == SquarePolicy::Auto ? "auto"
                        : c.square.policy == SquarePolicy::Wide ? "wide" : "explicit"},
             {"pad", c.square.pad}};
  if (c.square.policy == SquarePolicy::Explicit) {
    sq["lo"] = vec_json(c.square.lo);
    sq["period"] = vec_json(c.square.period);
  }
  j["square"] = sq;
  json far = {{"F", c.F}, {"charfun_nodes", c.charfun_nodes}};
  if (c.kernel) { far["w0p"] = c.kernel->w0; far["w1p"] = c.kernel->w1; }
  if (c.density_window) { far["density_w0"] = c.density_window->w0; far["density_w1"] = c.density_window->w1; }
  j["far"] = far;
  j["near"] = {{"F_r", c.F_r}, {"F_theta", c.F_theta}, {"corner_correction", c.corner_correction}};
  j["window"] = {{"w0", c.window.w0}, {"w1", c.window.w1}};
  j["output"] = {{"grid_n", c.grid_n}, {"dir", c.out_dir}, {"gnuplot", c.gnuplot}};
  j["cache"] = {{"dir", c.cache_dir}};
  j["run"] = {{"threads", c.threads}, {"debug_dump", c.debug_dump}};
  return j.dump(2);
}

ParamBoundary make_boundary(const DomainSpec& d) {
  if (d.kind == "teardrop") {
    if (!(d.lx > 0 && d.ly > 0)) throw ConfigError("domain: teardrop needs lx, ly > 0");
    return make_teardrop(d.lx, d.ly);
  }
  if (d.kind == "disk") {
    if (!(d.radius > 0)) throw ConfigError("domain: disk needs radius > 0");
    return make_disk(d.radius, d.center);
  }
  if (d.kind == "ellipse") {
    if (!(d.a > 0 && d.b > 0)) throw ConfigError("domain: ellipse needs a, b > 0");
    return make_ellipse(d.a, d.b, d.center);
  }
  if (d.kind == "polyline") {
    if (d.points.size() < 4) throw ConfigError("domain: polyline needs at least 4 points");
    std::vector<bool> flags(d.points.size(), false);
    for (std::size_t i : d.corners) {
      if (i >= d.points.size()) throw ConfigError("domain.corners: index out of range");
      flags[i] = true;
    }
    try {
      return make_spline_polyline(d.points, flags);
    } catch (const GeometryError& e) {
      throw ConfigError(std::string("domain: ") + e.what());
    }
  }
  throw ConfigError("domain.kind: expected teardrop, disk, ellipse or polyline");
}

Density make_density(const DensitySpec& d) {
  Density out;
  if (d.kind == "poly_exp") out = density_poly_exp();
  else if (d.kind == "one") out = density_one();
  else if (d.kind == "zero") out = density_zero();
  else if (d.kind == "tabulated") {
    if (d.nx < 4 || d.ny < 4) throw ConfigError("density: tabulated needs nx, ny >= 4");
    if (d.values.size() != d.nx * d.ny) throw ConfigError("density: tabulated value count != nx * ny");
    if (!(d.hi.x > d.lo.x && d.hi.y > d.lo.y)) throw ConfigError("density: tabulated needs hi > lo");
    out = density_tabulated(d.lo, d.hi, d.nx, d.ny, d.values);
  } else {
    throw ConfigError("density.kind: expected poly_exp, one, zero or tabulated");
  }
  if (d.scale != 1.0) out = density_scaled(out, d.scale);
  return out;
}

Square make_square(const SquareSpec& s, const ParamBoundary& b) {
  switch (s.policy) {
    case SquarePolicy::Auto:
      if (!(s.pad > 0)) throw ConfigError("square.pad must be > 0");
      return auto_square(b, s.pad);
    case SquarePolicy::Wide:
      return wide_square();
    case SquarePolicy::Explicit:
      if (!(s.period.x > 0 && s.period.y > 0)) throw ConfigError("square.period must be positive");
      if (s.period.x != s.period.y) throw ConfigError("square: S must be a square (equal periods)");
      return {s.lo, s.period};
  }
  throw ConfigError("square: bad policy");
}

FarFieldOptions make_farfield_options(const RunConfig& cfg, const ParamBoundary& b, const Square& S) {
  FarFieldOptions o = default_farfield_options(b, S, cfg.F, cfg.window);
  if (cfg.kernel) o.kernel = *cfg.kernel;
  if (cfg.density_window) o.density = *cfg.density_window;
  o.charfun_nodes = cfg.charfun_nodes;
  return o;
}

NearFieldOptions make_nearfield_options(const RunConfig& cfg) {
  NearFieldOptions o;
  o.F_r = cfg.near_F_r();
  o.F_theta = cfg.near_F_theta();
  o.window = cfg.window;
  o.corner_correction = cfg.corner_correction;
  return o;
}

void validate(const RunConfig& cfg) {
  cfg.window.validate();
  if (cfg.window.w1 > 1.0) throw ConfigError("window.w1 must be <= 1");
  if (cfg.F < 1) throw ConfigError("far.F must be >= 1");
  if (cfg.F_r < 0 || cfg.F_theta < 0) throw ConfigError("near: F_r and F_theta must be >= 0");
  if (cfg.grid_n < 2) throw ConfigError("output.grid_n must be >= 2");
  if (cfg.threads < 0) throw ConfigError("run.threads must be >= 0");
  ParamBoundary b = make_boundary(cfg.domain);
  make_density(cfg.density);
  Square S = make_square(cfg.square, b);
  check_farfield_conditions(b, S, make_farfield_options(cfg, b, S));
}

}  // namespace tff
