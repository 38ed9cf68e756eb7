#include "tff/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace tff::oracle {

RayOracle::RayOracle(const ParamBoundary& b, std::size_t segments) : b_(b) {
  std::vector<double> ts;
  for (std::size_t i = 0; i < segments; ++i) ts.push_back(two_pi * static_cast<double>(i) / segments);
  for (double c : b.corners()) ts.push_back(c);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  ts.push_back(two_pi);
  t_ = ts;
  for (double t : t_) p_.push_back(b(t));
}

std::vector<double> RayOracle::crossings(Vec2 x, double theta) const {
  Vec2 e{std::cos(theta), std::sin(theta)};
  Vec2 nrm{-e.y, e.x};
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < p_.size(); ++i) {
    double s0 = dot(p_[i] - x, nrm), s1 = dot(p_[i + 1] - x, nrm);
    if ((s0 > 0 && s1 > 0) || (s0 < 0 && s1 < 0)) continue;
    if (s0 == s1) continue;
    double lo = t_[i], hi = t_[i + 1];
    double t = lo + (hi - lo) * s0 / (s0 - s1);
    // Newton on the true curve, kept inside the segment's parameter range
    const double eps = 1e-12 * (hi - lo);
    for (int it = 0; it < 40; ++it) {
      Vec2 q = b_(t), v = b_.velocity(std::clamp(t, lo + eps, hi - eps));
      double g = dot(q - x, nrm), dg = dot(v, nrm);
      if (dg == 0) break;
      double tn = std::clamp(t - g / dg, lo, hi);
      if (std::fabs(tn - t) < 1e-16 * std::max(1.0, std::fabs(t))) {
        t = tn;
        break;
      }
      t = tn;
    }
    double d = dot(b_(t) - x, e);
    if (d > 0) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double d : out)
    if (uniq.empty() || d - uniq.back() > 1e-11) uniq.push_back(d);
  return uniq;
}

ReferenceResult polar_reference(Vec2 x, const ParamBoundary& b, const Density& phi,
                                const std::function<double(double)>& kernel, double tol,
                                std::vector<double> angle_breaks, std::vector<double> radial_breaks, double r_max) {
  RayOracle rays(b);
  for (double c : b.corners()) {
    Vec2 q = b(c) - x;
    double a = std::atan2(q.y, q.x);
    if (a < 0) a += two_pi;
    angle_breaks.push_back(a);
  }
  AdaptiveOptions outer;
  outer.abs_tol = tol;
  outer.max_depth = 40;
  AdaptiveOptions inner;
  inner.abs_tol = tol / (20 * pi);
  std::size_t evals = 0;
  bool ok = true;
  auto radial = [&](double theta) {
    std::vector<double> c = rays.crossings(x, theta);
    Vec2 e{std::cos(theta), std::sin(theta)};
    double s = 0.0;
    double start = 0.0;
    for (std::size_t k = 0; k < c.size(); k += 2) {
      double lo = start, hi = std::min(c[k], r_max);
      if (hi > lo) {
        std::vector<double> br;
        for (double r : radial_breaks)
          if (r > lo && r < hi) br.push_back(r);
        auto res = integrate([&](double r) { return kernel(r) * phi(x + e * r); }, lo, hi, inner, br);
        evals += res.evaluations;
        ok = ok && res.converged;
        s += res.value;
      }
      if (k + 1 >= c.size() || c[k + 1] >= r_max) break;
      start = c[k + 1];
    }
    return s;
  };
  ReferenceResult r = integrate(radial, 0.0, two_pi, outer, angle_breaks);
  r.method = "adaptive-polar";
  r.evaluations += evals;
  r.converged = r.converged && ok;
  return r;
}

ReferenceResult singular_convolution_reference(Vec2 x, const ParamBoundary& b, const Density& phi, double tol) {
  if (b.locate(x) != Location::Inside) throw GeometryError("oracle point is not inside the domain");
  auto r = polar_reference(
      x, b, phi, [](double r) { return r > 0 ? r * std::log(r) : 0.0; }, tol);
  r.method = "adaptive-polar-log";
  return r;
}

double disk_potential_analytic(Vec2 x, double R) {
  double r2 = dot(x, x);
  if (r2 <= R * R) return pi * (r2 - R * R) / 2 + pi * R * R * std::log(R);
  return pi * R * R * 0.5 * std::log(r2);
}

bool winding_inside(const std::vector<Vec2>& poly, Vec2 p) {
  // winding number by summed angle increments
  double w = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Vec2 a = poly[i] - p, b = poly[(i + 1) % poly.size()] - p;
    w += std::atan2(cross(a, b), dot(a, b));
  }
  return std::fabs(w) > pi;
}

double polyline_ray_distance(const std::vector<Vec2>& poly, Vec2 x, double theta, double cap, bool closed) {
  Vec2 e{std::cos(theta), std::sin(theta)};
  double best = cap;
  std::size_t n = poly.size();
  std::size_t m = closed ? n : n - 1;
  for (std::size_t i = 0; i < m; ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % n];
    Vec2 d = b - a;
    double den = cross(e, d);
    if (den == 0) continue;
    Vec2 w = a - x;
    double s = cross(w, d) / den;   // distance along the ray
    double u = cross(w, e) / den;   // position along the segment
    if (u >= 0 && u <= 1 && s > 1e-14 && s < best) best = s;
  }
  return best;
}

ReferenceCache::ReferenceCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    // keys may contain commas; the two numeric fields are the last ones
    std::size_t c2 = line.rfind(',');
    if (c2 == std::string::npos || c2 == 0) continue;
    std::size_t c1 = line.rfind(',', c2 - 1);
    if (c1 == std::string::npos) continue;
    std::string key = line.substr(0, c1);
    ReferenceResult r;
    try {
      r.value = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      r.estimated_error = std::stod(line.substr(c2 + 1));
    } catch (const std::exception&) {
      continue;
    }
    r.method = "cached";
    entries_[key] = r;
  }
}

bool ReferenceCache::lookup(const std::string& key, ReferenceResult& out) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return false;
  out = it->second;
  return true;
}

void ReferenceCache::store(const std::string& key, const ReferenceResult& r) { entries_[key] = r; }

void ReferenceCache::flush() const {
  std::ofstream out(path_);
  out.precision(17);
  out << "# key,value,estimated_error\n";
  for (const auto& [k, r] : entries_) out << k << ',' << r.value << ',' << r.estimated_error << '\n';
}

}  // namespace tff::oracle
