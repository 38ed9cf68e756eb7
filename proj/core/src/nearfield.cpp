#include "tff/nearfield.hpp"

#include <sstream>

#include "tff/series.hpp"

namespace tff {

FourierCoeffs1D box_coeffs(double start, double length, int F) {
  FourierCoeffs1D c(F, two_pi);
  c[0] = length / two_pi;
  for (int n = 1; n <= F; ++n) {
    cplx v = (std::polar(1.0, -n * start) - std::polar(1.0, -n * (start + length))) / cplx(0, two_pi * n);
    c[n] = v;
    c[-n] = std::conj(v);
  }
  return c;
}

NearFieldSolver::NearFieldSolver(const ParamBoundary& b, NearFieldOptions opt) : b_(b), opt_(opt) {
  opt_.window.validate();
  if (opt_.window.w1 > 1.0) throw ConfigError("near-field window needs w1 <= 1 (radial series period is [-1, 1])");
  if (opt_.F_r < 1 || opt_.F_theta < 1) throw ConfigError("near-field orders must be >= 1");
  const std::size_t N = static_cast<std::size_t>(2 * opt_.F_r);
  r_.resize(N);
  w1_table_.resize(N);
  for (std::size_t j = 0; j < N; ++j) {
    r_[j] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(N);
    w1_table_[j] = w1_eval(r_[j], opt_.window);
  }
  full_window_series_ = eval_on_grid(radial_series_two_sided(opt_.window.w1, opt_.window.w1, opt_.F_r), N, -1.0);
}

NearFieldPlan NearFieldSolver::plan(Vec2 x) const {
  if (b_.locate(x) != Location::Inside) {
    std::ostringstream os;
    os << "near-field point (" << x.x << ", " << x.y << ") is not strictly inside the domain";
    throw GeometryError(os.str());
  }
  const double w1 = opt_.window.w1;
  NearFieldPlan p;
  p.x = x;
  p.window_case = classify_window_case(x, w1, b_);
  if (p.window_case == WindowCase::CornerIntersection) {
    // W1 underflows to 0 within ~1e-3 (w1 - w0) of the rim; a corner there
    // does not touch the integrand and its fan would be degenerate.
    bool seen = false;
    for (double c : b_.corners())
      if (w1_eval(norm(b_(c) - x), opt_.window) > 0.0) seen = true;
    if (!seen) p.window_case = WindowCase::SmoothIntersection;
  }
  const std::size_t Nt = static_cast<std::size_t>(2 * opt_.F_theta);
  p.theta.resize(Nt);
  p.cut_plus.assign(Nt, w1);

  if (p.window_case != WindowCase::CornerIntersection) {
    p.cut_minus.assign(Nt, w1);
    for (std::size_t k = 0; k < Nt; ++k) p.theta[k] = pi * static_cast<double>(k) / static_cast<double>(Nt);
    if (p.window_case == WindowCase::SmoothIntersection) {
      RayCaster rc(b_, x, w1);
      for (std::size_t k = 0; k < Nt; ++k) {
        p.cut_plus[k] = rc.distance(p.theta[k]);
        p.cut_minus[k] = rc.distance(p.theta[k] + pi);
      }
    }
    return p;
  }

  for (std::size_t k = 0; k < Nt; ++k) p.theta[k] = -pi + two_pi * static_cast<double>(k) / static_cast<double>(Nt);
  if (!opt_.corner_correction) {
    RayCaster rc(b_, x, w1);
    for (std::size_t k = 0; k < Nt; ++k) p.cut_plus[k] = rc.distance(p.theta[k]);
    p.cut_minus.assign(Nt, 0.0);
    return p;
  }
  CornerFan fan = corner_fan(x, w1, b_);
  p.fan = fan;
  p.corrected = true;
  RayCaster red(b_, x, w1, {{fan.t[4] - 2.0 * two_pi, fan.t[2]}}, fan.corner_index);
  RayCaster blue(b_, x, w1, {{fan.t[1], fan.t[3]}}, fan.corner_index);
  p.cut_minus.resize(Nt);
  for (std::size_t k = 0; k < Nt; ++k) {
    p.cut_plus[k] = red.distance(p.theta[k]);
    p.cut_minus[k] = blue.distance(p.theta[k]);
  }
  std::vector<cplx> chi = eval_on_grid(box_coeffs(fan.blue_start, fan.blue_length, opt_.F_theta), Nt, -pi);
  p.chi.resize(Nt);
  for (std::size_t k = 0; k < Nt; ++k) p.chi[k] = chi[k].real();
  return p;
}

double NearFieldSolver::radial_integral(Vec2 x, double theta, double cut_plus, double cut_minus,
                                        const Density& phi) const {
  const std::size_t N = r_.size();
  const double w1 = opt_.window.w1;
  std::vector<cplx> gv;
  const std::vector<cplx>* g = &full_window_series_;
  if (!(cut_plus == w1 && cut_minus == w1)) {
    gv = eval_on_grid(radial_series_two_sided(cut_minus, cut_plus, opt_.F_r), N, -1.0);
    g = &gv;
  }
  const Vec2 e = unit(theta);
  double sum = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    if (w1_table_[j] == 0.0) continue;
    sum += (*g)[j].real() * phi(x + e * r_[j]) * w1_table_[j];
  }
  return 2.0 / static_cast<double>(N) * sum;
}

double NearFieldSolver::interior(const NearFieldPlan& p, const Density& phi) const {
  double s = 0.0;
  for (std::size_t k = 0; k < p.theta.size(); ++k)
    s += radial_integral(p.x, p.theta[k], p.cut_plus[k], p.cut_minus[k], phi);
  return pi / static_cast<double>(p.theta.size()) * s;
}

double NearFieldSolver::corner(const NearFieldPlan& p, const Density& phi) const {
  double s = 0.0;
  for (std::size_t k = 0; k < p.theta.size(); ++k) {
    if (!p.corrected) {
      s += radial_integral(p.x, p.theta[k], p.cut_plus[k], 0.0, phi);
      continue;
    }
    double chi = p.chi[k];
    double red = radial_integral(p.x, p.theta[k], p.cut_plus[k], 0.0, phi);
    double blue = p.cut_minus[k] == p.cut_plus[k] ? red : radial_integral(p.x, p.theta[k], p.cut_minus[k], 0.0, phi);
    s += (1.0 - chi) * red + chi * blue;
  }
  return two_pi / static_cast<double>(p.theta.size()) * s;
}

double NearFieldSolver::evaluate(const NearFieldPlan& p, const Density& phi) const {
  return p.window_case == WindowCase::CornerIntersection ? corner(p, phi) : interior(p, phi);
}

double NearFieldSolver::evaluate_unfiltered(const NearFieldPlan& p, const Density& phi) const {
  // raw |r| log|r| chi_[-a, b] on the radial nodes, with the plain exit distance as cut
  const std::size_t N = r_.size();
  const bool two_sided = p.window_case != WindowCase::CornerIntersection;
  std::vector<double> cp = p.cut_plus, cm = p.cut_minus;
  if (!two_sided && p.corrected) {
    RayCaster rc(b_, p.x, opt_.window.w1);
    for (std::size_t k = 0; k < p.theta.size(); ++k) cp[k] = rc.distance(p.theta[k]);
  }
  double s = 0.0;
  for (std::size_t k = 0; k < p.theta.size(); ++k) {
    const Vec2 e = unit(p.theta[k]);
    double a = two_sided ? cm[k] : 0.0, b = cp[k];
    double sum = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      double r = r_[j];
      if (r == 0.0 || w1_table_[j] == 0.0 || r > b || r < -a) continue;
      double ar = std::fabs(r);
      sum += ar * std::log(ar) * phi(p.x + e * r) * w1_table_[j];
    }
    s += 2.0 / static_cast<double>(N) * sum;
  }
  const double span = two_sided ? pi : two_pi;
  return span / static_cast<double>(p.theta.size()) * s;
}

}  // namespace tff
