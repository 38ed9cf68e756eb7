#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tff/oracle.hpp"

namespace tff::oracle {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Neumaier {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double t = s + v;
    c += std::fabs(s) >= std::fabs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct Piece {
  double lo, hi, value, error;
  int depth;
  bool floor;  // error estimate is at the roundoff level
};

// One Kronrod/Gauss pair on [lo, hi] with the scaled error estimate.
Piece apply_rule(const std::function<double(double)>& f, double lo, double hi, int depth) {
  static const auto& xk = GK::abscissa();
  static const auto& wk = GK::weights();
  static const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const double eps = std::numeric_limits<double>::epsilon();
  double fc = f(c);
  double k = wk[0] * fc, g = wg[0] * fc, kabs = std::fabs(k);
  double fv[15];
  fv[0] = fc;
  int m = 1;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    double a = f(c - h * xk[i]), b = f(c + h * xk[i]);
    k += wk[i] * (a + b);
    kabs += wk[i] * (std::fabs(a) + std::fabs(b));
    if (i % 2 == 0) g += wg[i / 2] * (a + b);
    fv[m++] = a;
    fv[m++] = b;
  }
  double mean = 0.5 * k;
  double asc = wk[0] * std::fabs(fc - mean);
  for (std::size_t i = 1; i < xk.size(); ++i)
    asc += wk[i] * (std::fabs(fv[2 * i - 1] - mean) + std::fabs(fv[2 * i] - mean));
  k *= h;
  g *= h;
  kabs *= std::fabs(h);
  asc *= std::fabs(h);
  double err = std::fabs(k - g);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  double rfloor = 50.0 * eps * kabs;
  bool at_floor = err <= rfloor;
  if (at_floor) err = rfloor;
  return {lo, hi, k, err, depth, at_floor};
}

}  // namespace

// Global adaptive bisection: always split the piece with the largest error
// until the summed estimate meets abs_tol or every remaining piece is at
// the roundoff floor. A tolerance below twice the summed floor is not
// attainable and is replaced by it.
ReferenceResult integrate(const std::function<double(double)>& f, double a, double b, AdaptiveOptions opt,
                          std::vector<double> breaks) {
  ReferenceResult res;
  res.method = "adaptive-gk15";
  if (a == b) return res;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double t) { return t < a || t > b; }), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto worse = [](const Piece& x, const Piece& y) { return x.error < y.error; };
  std::vector<Piece> heap, done;
  double err_total = 0.0, floor_total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Piece p = apply_rule(f, breaks[i], breaks[i + 1], 0);
    res.evaluations += 15;
    err_total += p.error;
    if (p.floor) done.push_back(p), floor_total += p.error;
    else heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end(), worse);
  std::size_t intervals = heap.size() + done.size();
  auto target = [&] { return std::max(opt.abs_tol, 2 * floor_total); };
  while (!heap.empty() && err_total > target()) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    Piece p = heap.back();
    heap.pop_back();
    double mid = 0.5 * (p.lo + p.hi);
    if (p.depth >= opt.max_depth || !(mid > p.lo && mid < p.hi) || intervals >= opt.max_intervals) {
      done.push_back(p);
      res.converged = false;
      continue;
    }
    Piece l = apply_rule(f, p.lo, mid, p.depth + 1), r = apply_rule(f, mid, p.hi, p.depth + 1);
    res.evaluations += 30;
    ++intervals;
    err_total += l.error + r.error - p.error;
    for (const Piece& q : {l, r}) {
      if (q.floor) {
        done.push_back(q);
        floor_total += q.error;
      } else {
        heap.push_back(q);
        std::push_heap(heap.begin(), heap.end(), worse);
      }
    }
  }
  Neumaier sum, err;
  for (const Piece& p : heap) sum.add(p.value), err.add(p.error);
  for (const Piece& p : done) sum.add(p.value), err.add(p.error);
  res.value = sign * sum.value();
  res.estimated_error = err.value();
  if (err_total > target()) res.converged = false;
  return res;
}

ComplexResult integrate_complex(const std::function<cplx(double)>& f, double a, double b, AdaptiveOptions opt,
                                std::vector<double> breaks) {
  AdaptiveOptions half = opt;
  half.abs_tol = opt.abs_tol / 2;
  auto re = integrate([&](double t) { return f(t).real(); }, a, b, half, breaks);
  auto im = integrate([&](double t) { return f(t).imag(); }, a, b, half, breaks);
  return {{re.value, im.value}, re.estimated_error + im.estimated_error, re.converged && im.converged};
}

cplx coefficient_quadrature_oracle(int n, double r, double P, double tol) {
  const double k = two_pi * n / P;
  AdaptiveOptions o;
  o.abs_tol = tol * P;
  // split at the oscillation scale so each piece holds a few periods
  std::vector<double> br;
  if (n != 0) {
    double per = two_pi / std::fabs(k);
    for (double t = per; t < r; t += per) br.push_back(t);
  }
  auto res = integrate_complex(
      [&](double t) { return t > 0 ? t * std::log(t) * std::polar(1.0, -k * t) : cplx(0); }, 0.0, r, o, br);
  return res.value / P;
}

cplx fourier_coefficient(const std::function<double(double)>& f, int n, double a, double d, double tol) {
  const double k = two_pi * n / d;
  AdaptiveOptions o;
  o.abs_tol = tol * d;
  std::vector<double> br;
  int pieces = std::max(1, std::abs(n));
  for (int i = 1; i < pieces; ++i) br.push_back(a + d * i / pieces);
  auto res = integrate_complex([&](double x) { return f(x) * std::polar(1.0, -k * (x - a)); }, a, a + d, o, br);
  return res.value / d * std::polar(1.0, -k * a);
}

}  // namespace tff::oracle
