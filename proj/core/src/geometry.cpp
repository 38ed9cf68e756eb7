#include "tff/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <limits>
#include <memory>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace tff {

namespace {

constexpr std::size_t kSamplesPerPeriod = 4096;

double wrap_angle(double a) {
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  return a;
}

double circular_gap(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, two_pi - d);
}

// Root of f on [lo, hi] given a sign change; toms748 with a plain bisection
// fallback for flat brackets.
template <class Fn>
double bracket_root(Fn&& f, double lo, double hi, double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  boost::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::fabs(a - b) <= 1e-15 * std::max(1.0, std::fabs(a)); };
  try {
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
  } catch (const std::exception&) {
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      double mid = 0.5 * (lo + hi);
      double fm = f(mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
}

bool crossing_parity(const std::vector<ParamBoundary::Sample>& s, Vec2 p) {
  bool in = false;
  std::size_t n = s.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    Vec2 a = s[i].p, b = s[j].p;
    if ((a.y > p.y) != (b.y > p.y)) {
      double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) in = !in;
    }
  }
  return in;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double l2 = dot(ab, ab);
  double s = l2 > 0 ? std::clamp(dot(p - a, ab) / l2, 0.0, 1.0) : 0.0;
  return norm(p - (a + ab * s));
}

}  // namespace

ParamBoundary::ParamBoundary(std::string name, std::vector<CurvePiece> pieces,
                             std::vector<double> corners)
    : name_(std::move(name)), pieces_(std::move(pieces)), corners_(std::move(corners)) {
  if (pieces_.empty()) throw GeometryError("boundary has no pieces");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const CurvePiece& a, const CurvePiece& b) { return a.t_begin < b.t_begin; });
  if (std::fabs(pieces_.front().t_begin) > 1e-12 || std::fabs(pieces_.back().t_end - two_pi) > 1e-12)
    throw GeometryError("pieces must tile [0, 2pi]");
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (std::fabs(pieces_[i].t_begin - pieces_[i - 1].t_end) > 1e-12)
      throw GeometryError("pieces must tile [0, 2pi] without gaps");
  for (double& c : corners_) {
    if (c < 0 || c >= two_pi) throw GeometryError("corner parameter outside [0, 2pi)");
  }
  std::sort(corners_.begin(), corners_.end());
  if (norm((*this)(0.0) - pieces_.back().position(two_pi)) > 1e-10)
    throw GeometryError("boundary is not closed");

  samples_.reserve(kSamplesPerPeriod);
  for (std::size_t i = 0; i < kSamplesPerPeriod; ++i) {
    double t = two_pi * static_cast<double>(i) / kSamplesPerPeriod;
    samples_.push_back({t, (*this)(t)});
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& a = samples_[i];
    double tb = i + 1 < samples_.size() ? samples_[i + 1].t : two_pi;
    Vec2 pb = (*this)(tb);
    Vec2 mid = (*this)(0.5 * (a.t + tb));
    sagitta_ = std::max(sagitta_, norm(mid - (a.p + pb) * 0.5));
  }
  sagitta_ *= 2.0;
  area_ = signed_area();
}

double ParamBoundary::wrap(double t) const {
  t = std::fmod(t, two_pi);
  if (t < 0) t += two_pi;
  return t;
}

std::size_t ParamBoundary::piece_index(double t) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (t < pieces_[i].t_end) return i;
  return pieces_.size() - 1;
}

Vec2 ParamBoundary::operator()(double t) const {
  t = wrap(t);
  return pieces_[piece_index(t)].position(t);
}

Vec2 ParamBoundary::velocity(double t) const {
  t = wrap(t);
  return pieces_[piece_index(t)].velocity(t);
}

Vec2 ParamBoundary::extended(double u, std::size_t ci) const {
  if (corners_.empty()) return (*this)(u);
  double tc = corners_.at(ci);
  if (u > 3.0 * pi) u -= 2.0 * two_pi;
  if (u < 0) {
    const auto& out = pieces_[piece_index(tc)];
    return out.position(tc + u);
  }
  if (u <= two_pi) return (*this)(tc + u);
  // piece that ends at the corner
  std::size_t k = tc == 0.0 ? pieces_.size() - 1 : piece_index(tc) - 1;
  const auto& in = pieces_[k];
  return in.position(in.t_end + (u - two_pi));
}

double ParamBoundary::closest_param(Vec2 p, double* dist) const {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    double d = norm(samples_[i].p - p);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  double h = two_pi / static_cast<double>(samples_.size());
  double lo = samples_[best].t - h, hi = samples_[best].t + h;
  // split the local window at corners so each minimization sees one smooth piece
  std::vector<double> cuts{lo};
  for (double c : corners_) {
    for (double cc : {c - two_pi, c, c + two_pi})
      if (cc > lo && cc < hi) cuts.push_back(cc);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double tbest = samples_[best].t;
  double dbest = bd;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = cuts[k], b = cuts[k + 1];
    double eps = 1e-13 * (b - a);
    // keep the minimization inside one piece: evaluate through the piece
    // that owns the interval midpoint
    double mid = wrap(0.5 * (a + b));
    const auto& piece = pieces_[piece_index(mid)];
    double shift = mid - 0.5 * (a + b);
    auto f = [&](double t) {
      Vec2 q = piece.position(t + shift);
      return norm(q - p);
    };
    auto r = boost::math::tools::brent_find_minima(f, a + eps, b - eps, 52);
    // Brent stalls near sqrt(eps) on the kink of |b(t) - p| at zero distance;
    // Gauss-Newton on <b - p, b'> = 0 finishes the job
    for (int it = 0; it < 4; ++it) {
      Vec2 v = piece.velocity(r.first + shift);
      double vv = dot(v, v);
      if (!(vv > 0)) break;
      double tn = std::clamp(r.first - dot(piece.position(r.first + shift) - p, v) / vv, a, b);
      double dn = f(tn);
      if (!(dn < r.second)) break;
      r = {tn, dn};
    }
    if (r.second < dbest) {
      dbest = r.second;
      tbest = r.first;
    }
    for (double e : {a, b}) {
      double de = norm((*this)(e)-p);
      if (de < dbest) {
        dbest = de;
        tbest = e;
      }
    }
  }
  if (dist) *dist = dbest;
  return wrap(tbest);
}

double ParamBoundary::distance(Vec2 p) const {
  double d;
  closest_param(p, &d);
  return d;
}

Location ParamBoundary::locate(Vec2 p, double tol) const {
  double dpoly = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& a = samples_[i];
    const auto& b = samples_[(i + 1) % samples_.size()];
    dpoly = std::min(dpoly, segment_distance(p, a.p, b.p));
  }
  bool orient_ccw = area_ > 0;
  if (dpoly > sagitta_ + 1e-12) return crossing_parity(samples_, p) ? Location::Inside : Location::Outside;

  double d;
  double t = closest_param(p, &d);
  double scale = std::max(1.0, norm(p));
  if (d <= tol * scale) return Location::OnBoundary;
  auto left_of = [&](Vec2 q, Vec2 tangent) {
    double c = cross(tangent, p - q);
    return orient_ccw ? c > 0 : c < 0;
  };
  for (double c : corners_) {
    if (circular_gap(t, c) < 1e-7) {
      Vec2 q = (*this)(c);
      std::size_t kin = c == 0.0 ? pieces_.size() - 1 : piece_index(c) - 1;
      const auto& pin = pieces_[kin];
      const auto& pout = pieces_[piece_index(c)];
      Vec2 tin = pin.velocity(pin.t_end);
      Vec2 tout = pout.velocity(pout.t_begin);
      bool convex = orient_ccw ? cross(tin, tout) > 0 : cross(tin, tout) < 0;
      bool a = left_of(q, tin), b = left_of(q, tout);
      bool in = convex ? (a && b) : (a || b);
      return in ? Location::Inside : Location::Outside;
    }
  }
  return left_of((*this)(t), velocity(t)) ? Location::Inside : Location::Outside;
}

double ParamBoundary::signed_area() const {
  double a = 0.0;
  for (const auto& pc : pieces_) {
    const int panels = 64;
    double h = (pc.t_end - pc.t_begin) / panels;
    for (int k = 0; k < panels; ++k) {
      double lo = pc.t_begin + k * h;
      a += boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double t) {
            Vec2 q = pc.position(t), v = pc.velocity(t);
            return 0.5 * cross(q, v);
          },
          lo, lo + h);
    }
  }
  return a;
}

double ParamBoundary::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i)
    for (std::size_t j = i + 1; j < samples_.size(); ++j) {
      Vec2 q = samples_[i].p - samples_[j].p;
      d = std::max(d, q.x * q.x + q.y * q.y);
    }
  return std::sqrt(d) + sagitta_;
}

BoundingBox ParamBoundary::bbox() const {
  BoundingBox bb{samples_[0].p, samples_[0].p};
  for (const auto& s : samples_) {
    bb.lo.x = std::min(bb.lo.x, s.p.x);
    bb.lo.y = std::min(bb.lo.y, s.p.y);
    bb.hi.x = std::max(bb.hi.x, s.p.x);
    bb.hi.y = std::max(bb.hi.y, s.p.y);
  }
  return bb;
}

double ParamBoundary::max_radius_about(Vec2 c) const {
  std::size_t best = 0;
  double bd = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    double d = norm(samples_[i].p - c);
    if (d > bd) {
      bd = d;
      best = i;
    }
  }
  double h = two_pi / static_cast<double>(samples_.size());
  auto f = [&](double t) { return -norm((*this)(t)-c); };
  auto r = boost::math::tools::brent_find_minima(f, samples_[best].t - h, samples_[best].t + h, 52);
  return std::max(bd, -r.second);
}

std::vector<Vec2> ParamBoundary::polygon(std::size_t n) const {
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(two_pi * static_cast<double>(i) / n);
  return out;
}

std::uint64_t ParamBoundary::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const void* data, std::size_t len) {
    auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  mix(name_.data(), name_.size());
  for (double c : corners_) mix(&c, sizeof c);
  for (std::size_t i = 0; i < samples_.size(); i += 16) {
    mix(&samples_[i].p.x, sizeof(double));
    mix(&samples_[i].p.y, sizeof(double));
  }
  return h;
}

ParamBoundary make_teardrop(double lx, double ly) {
  if (!(lx > 0 && ly > 0)) throw ConfigError("teardrop needs lx, ly > 0");
  CurvePiece pc;
  pc.position = [=](double t) { return Vec2{lx * std::sin(t / 2), -ly * std::sin(t)}; };
  pc.velocity = [=](double t) { return Vec2{0.5 * lx * std::cos(t / 2), -ly * std::cos(t)}; };
  std::ostringstream nm;
  nm.precision(17);
  nm << "teardrop(" << lx << "," << ly << ")";
  return ParamBoundary(nm.str(), {pc}, {0.0});
}

ParamBoundary make_ellipse(double a, double b, Vec2 c) {
  if (!(a > 0 && b > 0)) throw ConfigError("ellipse needs positive semi-axes");
  CurvePiece pc;
  pc.position = [=](double t) { return Vec2{c.x + a * std::cos(t), c.y + b * std::sin(t)}; };
  pc.velocity = [=](double t) { return Vec2{-a * std::sin(t), b * std::cos(t)}; };
  std::ostringstream nm;
  nm.precision(17);
  nm << "ellipse(" << a << "," << b << "," << c.x << "," << c.y << ")";
  return ParamBoundary(nm.str(), {pc}, {});
}

ParamBoundary make_disk(double r, Vec2 c) {
  if (!(r > 0)) throw ConfigError("disk needs r > 0");
  CurvePiece pc;
  pc.position = [=](double t) { return Vec2{c.x + r * std::cos(t), c.y + r * std::sin(t)}; };
  pc.velocity = [=](double t) { return Vec2{-r * std::sin(t), r * std::cos(t)}; };
  std::ostringstream nm;
  nm.precision(17);
  nm << "disk(" << r << "," << c.x << "," << c.y << ")";
  return ParamBoundary(nm.str(), {pc}, {});
}

namespace {

// Cubic spline y(s) through (s_k, y_k); natural or periodic end conditions.
// Evaluation outside [s_0, s_m] continues the end cubic.
struct Spline {
  std::vector<double> s, y, m;  // m = second derivatives

  Spline(std::vector<double> s_, std::vector<double> y_, bool periodic) : s(std::move(s_)), y(std::move(y_)) {
    const std::size_t n = s.size();
    m.assign(n, 0.0);
    if (n < 3) return;
    if (!periodic) {
      // natural: tridiagonal in the interior unknowns
      std::size_t k = n - 2;
      Eigen::VectorXd sub(k), diag(k), sup(k), rhs(k);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        double h0 = s[i] - s[i - 1], h1 = s[i + 1] - s[i];
        sub[i - 1] = h0;
        diag[i - 1] = 2 * (h0 + h1);
        sup[i - 1] = h1;
        rhs[i - 1] = 6 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
      }
      for (std::size_t i = 1; i < k; ++i) {
        double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
      Eigen::VectorXd x(k);
      x[k - 1] = rhs[k - 1] / diag[k - 1];
      for (std::size_t i = k - 1; i-- > 0;) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
      for (std::size_t i = 0; i < k; ++i) m[i + 1] = x[i];
    } else {
      // periodic: s[n-1] closes onto s[0]; unknowns m_0..m_{n-2}
      std::size_t k = n - 1;
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k, k);
      Eigen::VectorXd rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t ip = (i + 1) % k, im = (i + k - 1) % k;
        double h0 = i == 0 ? s[n - 1] - s[n - 2] : s[i] - s[i - 1];
        double h1 = s[i + 1] - s[i];
        double ym = i == 0 ? y[n - 2] : y[i - 1];
        A(i, im) += h0;
        A(i, i) += 2 * (h0 + h1);
        A(i, ip) += h1;
        rhs[i] = 6 * ((y[i + 1] - y[i]) / h1 - (y[i] - ym) / h0);
      }
      Eigen::VectorXd x = A.partialPivLu().solve(rhs);
      for (std::size_t i = 0; i < k; ++i) m[i] = x[i];
      m[n - 1] = m[0];
    }
  }

  std::size_t seg(double t) const {
    auto it = std::upper_bound(s.begin(), s.end(), t);
    std::size_t i = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
    return std::min(i, s.size() - 2);
  }
  double value(double t) const {
    std::size_t i = seg(t);
    double h = s[i + 1] - s[i], a = (s[i + 1] - t) / h, b = (t - s[i]) / h;
    return a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6;
  }
  double deriv(double t) const {
    std::size_t i = seg(t);
    double h = s[i + 1] - s[i], a = (s[i + 1] - t) / h, b = (t - s[i]) / h;
    return (y[i + 1] - y[i]) / h + (-(3 * a * a - 1) * m[i] + (3 * b * b - 1) * m[i + 1]) * h / 6;
  }
};

}  // namespace

ParamBoundary make_spline_polyline(const std::vector<Vec2>& pts_in, const std::vector<bool>& corner_in) {
  if (pts_in.size() < 4) throw ConfigError("polyline needs at least 4 points");
  if (corner_in.size() != pts_in.size()) throw ConfigError("polyline corner flags size mismatch");
  std::vector<Vec2> pts = pts_in;
  std::vector<bool> corner = corner_in;
  double a = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) a += cross(pts[i], pts[(i + 1) % pts.size()]);
  if (a < 0) {
    std::reverse(pts.begin(), pts.end());
    std::reverse(corner.begin(), corner.end());
  }
  // rotate so that the first corner (if any) is point 0
  auto first = std::find(corner.begin(), corner.end(), true);
  if (first != corner.end()) {
    auto k = first - corner.begin();
    std::rotate(pts.begin(), pts.begin() + k, pts.end());
    std::rotate(corner.begin(), corner.begin() + k, corner.end());
  }
  const std::size_t n = pts.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + norm(pts[(i + 1) % n] - pts[i]);
  const double scale = two_pi / cum[n];
  for (double& c : cum) c *= scale;
  cum[n] = two_pi;

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (corner[i]) idx.push_back(i);
  bool periodic = idx.empty();
  if (periodic) idx.push_back(0);
  idx.push_back(n);

  std::vector<CurvePiece> pieces;
  std::vector<double> corner_ts;
  for (std::size_t c = 0; c + 1 < idx.size(); ++c) {
    std::size_t i0 = idx[c], i1 = idx[c + 1];
    std::vector<double> s, xs, ys;
    for (std::size_t i = i0; i <= i1; ++i) {
      s.push_back(cum[i]);
      xs.push_back(pts[i % n].x);
      ys.push_back(pts[i % n].y);
    }
    if (s.size() < 2) throw ConfigError("polyline chain too short");
    if (s.size() == 2) {
      // straight segment: insert midpoint so the spline is well posed
      s.insert(s.begin() + 1, 0.5 * (s[0] + s[1]));
      xs.insert(xs.begin() + 1, 0.5 * (xs[0] + xs[1]));
      ys.insert(ys.begin() + 1, 0.5 * (ys[0] + ys[1]));
    }
    auto sx = std::make_shared<Spline>(s, xs, periodic);
    auto sy = std::make_shared<Spline>(s, ys, periodic);
    CurvePiece pc;
    pc.position = [sx, sy](double t) { return Vec2{sx->value(t), sy->value(t)}; };
    pc.velocity = [sx, sy](double t) { return Vec2{sx->deriv(t), sy->deriv(t)}; };
    pc.t_begin = cum[i0];
    pc.t_end = cum[i1];
    pieces.push_back(std::move(pc));
    if (!periodic) corner_ts.push_back(cum[i0]);
  }
  return ParamBoundary("polyline", std::move(pieces), std::move(corner_ts));
}

bool point_in_domain(Vec2 p, const ParamBoundary& b) { return b.locate(p) == Location::Inside; }

RayCaster::RayCaster(const ParamBoundary& b, Vec2 x, double w1, std::vector<Segment> segments,
                     std::size_t corner_index, std::size_t spp)
    : b_(b), x_(x), w1_(w1), corner_frame_(!segments.empty()), corner_index_(corner_index) {
  if (!(w1 > 0)) throw GeometryError("ray caster needs w1 > 0");
  if (segments.empty()) {
    double lo = 0.0;
    std::vector<double> cuts = b.corners();
    cuts.push_back(two_pi);
    for (double c : cuts) {
      if (c > lo) segments.push_back({lo, c});
      lo = c;
    }
  }
  const double step = two_pi / static_cast<double>(spp);
  for (const auto& sg : segments) {
    double len = sg.u_hi - sg.u_lo;
    std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
    double h = len / static_cast<double>(m);
    Vec2 p0 = eval(sg.u_lo);
    for (std::size_t k = 0; k < m; ++k) {
      double u0 = sg.u_lo + h * k;
      double u1 = k + 1 == m ? sg.u_hi : u0 + h;
      Vec2 p1 = eval(u1);
      double chord = norm(p1 - p0);
      if (std::min(norm(p0 - x), norm(p1 - x)) < w1 + chord) candidates_.push_back({u0, u1, p0, p1});
      p0 = p1;
    }
  }
}

Vec2 RayCaster::eval(double u) const { return corner_frame_ ? b_.extended(u, corner_index_) : b_(u); }

double RayCaster::distance(double theta) const {
  Vec2 e = unit(theta);
  Vec2 nrm{-e.y, e.x};
  double best = w1_;
  for (const auto& iv : candidates_) {
    double s0 = dot(iv.p0 - x_, nrm), s1 = dot(iv.p1 - x_, nrm);
    if ((s0 > 0 && s1 > 0) || (s0 < 0 && s1 < 0)) continue;
    // cheap reject: both ends behind the origin or beyond the current best
    if (dot(iv.p0 - x_, e) < -0.5 * w1_ && dot(iv.p1 - x_, e) < -0.5 * w1_) continue;
    auto f = [&](double u) { return dot(eval(u) - x_, nrm); };
    double u = bracket_root(f, iv.u0, iv.u1, s0, s1);
    double d = dot(eval(u) - x_, e);
    if (d > 1e-14 && d < best) best = d;
  }
  return best;
}

double ray_boundary_distance(Vec2 x, double theta, double w1, const ParamBoundary& b) {
  return RayCaster(b, x, w1).distance(theta);
}

double ray_curve_segment_distance(Vec2 x, double theta, const ParamBoundary& b, double u_lo, double u_hi,
                                  double w1, std::size_t corner_index) {
  if (!(u_hi > u_lo)) throw GeometryError("empty curve segment");
  return RayCaster(b, x, w1, {{u_lo, u_hi}}, corner_index).distance(theta);
}

const char* to_string(WindowCase c) {
  switch (c) {
    case WindowCase::FullyInside: return "fully_inside";
    case WindowCase::SmoothIntersection: return "smooth_intersection";
    case WindowCase::CornerIntersection: return "corner_intersection";
  }
  return "?";
}

WindowCase classify_window_case(Vec2 x, double w1, const ParamBoundary& b) {
  for (double c : b.corners())
    if (norm(b(c) - x) < w1) return WindowCase::CornerIntersection;
  return b.distance(x) >= w1 ? WindowCase::FullyInside : WindowCase::SmoothIntersection;
}

CornerFan corner_fan(Vec2 x, double w1, const ParamBoundary& b) {
  CornerFan fan;
  int found = -1;
  for (std::size_t i = 0; i < b.corners().size(); ++i) {
    if (norm(b(b.corners()[i]) - x) < w1) {
      if (found >= 0) throw GeometryError("more than one corner inside the window disk");
      found = static_cast<int>(i);
    }
  }
  if (found < 0) throw GeometryError("no corner inside the window disk");
  const std::size_t ci = static_cast<std::size_t>(found);
  fan.corner_index = ci;
  fan.t0 = b.corners()[ci];

  auto h = [&](double u) { return norm(b.extended(u, ci) - x) - w1; };
  const double step = two_pi / static_cast<double>(kSamplesPerPeriod);
  auto scan = [&](double from, double to) -> double {
    double dir = to > from ? 1.0 : -1.0;
    double u = from, hu = h(u);
    while ((to - u) * dir > 0) {
      double un = u + dir * step;
      if ((un - to) * dir > 0) un = to;
      double hn = h(un);
      if ((hu < 0) != (hn < 0)) {
        double lo = std::min(u, un), hi = std::max(u, un);
        return bracket_root(h, lo, hi, h(lo), h(hi));
      }
      u = un;
      hu = hn;
    }
    std::ostringstream os;
    os << "window circle does not cross the extended curve on (" << from << ", " << to
       << ") for x = (" << x.x << ", " << x.y << ")";
    throw GeometryError(os.str());
  };
  if (h(0.0) >= 0) throw GeometryError("corner not strictly inside the window disk");
  fan.t[0] = 0.0;
  fan.t[1] = scan(0.0, two_pi);
  fan.t[2] = scan(two_pi, 0.0);
  fan.t[3] = scan(two_pi, 3.0 * pi);
  fan.t[4] = scan(2.0 * two_pi, 3.0 * pi);
  // the boundary between t1 and t2 must stay outside the disk
  for (double u = fan.t[1] + step; u < fan.t[2] - step; u += step)
    if (h(u) < 0) throw GeometryError("window disk meets the extended curve in more than four points");

  for (int i = 0; i < 5; ++i) {
    Vec2 q = b.extended(fan.t[i], ci) - x;
    fan.theta[i] = wrap_angle(std::atan2(q.y, q.x));
  }
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (circular_gap(fan.theta[i], fan.theta[j]) < 1e-6)
        throw GeometryError("degenerate corner fan: coincident sector angles");

  // sweep of the view angle along the incoming arc t2 -> corner
  double sweep = 0.0;
  const int steps = 2048;
  Vec2 q0 = b.extended(fan.t[2], ci) - x;
  double a0 = std::atan2(q0.y, q0.x);
  for (int k = 1; k <= steps; ++k) {
    double u = fan.t[2] + (two_pi - fan.t[2]) * k / steps;
    Vec2 q = b.extended(u, ci) - x;
    double a = std::atan2(q.y, q.x);
    double d = a - a0;
    if (d > pi) d -= two_pi;
    if (d < -pi) d += two_pi;
    sweep += d;
    a0 = a;
  }
  fan.blue_length = std::fabs(sweep);
  fan.blue_start = sweep >= 0 ? fan.theta[2] : fan.theta[0];
  return fan;
}

}  // namespace tff
