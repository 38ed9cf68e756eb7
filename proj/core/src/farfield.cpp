#include "tff/farfield.hpp"

#include <algorithm>
#include <sstream>

namespace tff {

namespace {

std::size_t grid_size(int F, int oversample) {
  std::size_t n = static_cast<std::size_t>(std::max(1, oversample)) * static_cast<std::size_t>(2 * F + 1);
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace

Square auto_square(const ParamBoundary& b, double pad) {
  BoundingBox bb = b.bbox();
  Vec2 c = bb.center();
  double h = std::max(b.diameter(), b.max_radius_about(c)) + pad;
  return {c - Vec2{h, h}, {2 * h, 2 * h}};
}

Square wide_square() { return {{-4 * pi, -4 * pi}, {8 * pi, 8 * pi}}; }

FarFieldOptions default_farfield_options(const ParamBoundary& b, const Square& S, int F, WindowParams w1) {
  FarFieldOptions o;
  o.F = F;
  o.window = w1;
  const double half = 0.5 * std::min(S.period.x, S.period.y);
  o.kernel = fit_window(b.diameter(), half);
  o.density_center = S.center();
  o.density = fit_window(b.max_radius_about(o.density_center), half);
  return o;
}

void check_farfield_conditions(const ParamBoundary& b, const Square& S, const FarFieldOptions& o) {
  auto fail = [](const std::string& m) { throw ConfigError("far-field setup: " + m); };
  o.window.validate();
  o.kernel.validate();
  o.density.validate();
  if (o.F < 1) fail("F must be >= 1");
  BoundingBox bb = b.bbox();
  if (!(S.contains(bb.lo) && S.contains(bb.hi))) fail("domain is not contained in S");
  const double half = 0.5 * std::min(S.period.x, S.period.y);
  const double D = b.diameter();
  if (o.kernel.w0 < D) {
    std::ostringstream os;
    os << "kernel window w0' = " << o.kernel.w0 << " is below diam = " << D;
    fail(os.str());
  }
  if (o.kernel.w1 > half) fail("kernel window does not fit in one period cell");
  if (o.window.w1 >= o.kernel.w0) fail("near-field window must end before the kernel window starts");
  Vec2 c = o.density_center;
  double room = std::min({c.x - S.lo.x, S.lo.x + S.period.x - c.x, c.y - S.lo.y, S.lo.y + S.period.y - c.y});
  if (o.density.w1 > room) fail("density window support leaves S");
  for (const auto& s : b.samples()) {
    if (w2_eval(s.p, o.density, c) != 1.0) fail("density window is not 1 on the domain");
  }
  for (std::size_t i = 0; i < b.samples().size(); i += 32)
    for (std::size_t j = 0; j < b.samples().size(); j += 32)
      if (w2_eval(b.samples()[i].p - b.samples()[j].p, o.kernel) != 1.0) fail("kernel window is not 1 on x - y");
}

FourierCoeffs2D build_g_coeffs(const Square& S, const FarFieldOptions& o) {
  const std::size_t n = grid_size(o.F, o.oversample);
  const Vec2 P = S.period;
  const Vec2 origin{-0.5 * P.x, -0.5 * P.y};
  std::vector<cplx> s(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec2 z{origin.x + P.x * i / n, origin.y + P.y * j / n};
      double r = norm(z);
      double v = 0.0;
      double cut = 1.0 - w1_eval(r, o.window);
      if (cut != 0.0) v = std::log(r) * cut * w1_eval(r, o.kernel);
      s[i * n + j] = v;
    }
  return coeffs_from_samples_2d(s, n, n, P, o.F, origin);
}

FourierCoeffs2D build_density_coeffs(const Density& phi, const Square& S, const FarFieldOptions& o) {
  const std::size_t n = grid_size(o.F, o.oversample);
  const Vec2 P = S.period;
  std::vector<cplx> s(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec2 y{S.lo.x + P.x * i / n, S.lo.y + P.y * j / n};
      double w = w2_eval(y, o.density, o.density_center);
      s[i * n + j] = w == 0.0 ? 0.0 : phi(y) * w;
    }
  return coeffs_from_samples_2d(s, n, n, P, o.F, S.lo);
}

FourierCoeffs2D build_f_coeffs(const FourierCoeffs2D& chi, const FourierCoeffs2D& phi) {
  if (chi.F != phi.F) throw NumericalError("build_f_coeffs: order mismatch");
  return coeff_array_convolve_truncated(chi, phi);
}

FarField::FarField(const ParamBoundary& b, const Square& S, FarFieldOptions o, const Density& phi)
    : S_(S), o_(o) {
  check_farfield_conditions(b, S, o);
  CharFunOptions co;
  co.nodes = o.charfun_nodes;
  chi_ = charfun_coeffs(b, S, o.F, co).coeffs;
  g_ = build_g_coeffs(S, o);
  f_ = build_f_coeffs(chi_, build_density_coeffs(phi, S, o));
  prod_ = FourierCoeffs2D(o.F, S.period);
  const double scale = S.period.x * S.period.y;
  for (std::size_t i = 0; i < prod_.c.size(); ++i) prod_.c[i] = scale * f_.c[i] * g_.c[i];
}

FarField::FarField(const Square& S, FarFieldOptions o, FourierCoeffs2D chi, FourierCoeffs2D g, const Density& phi)
    : S_(S), o_(o), chi_(std::move(chi)), g_(std::move(g)) {
  if (chi_.F != o.F || g_.F != o.F) throw NumericalError("far field: coefficient order mismatch");
  f_ = build_f_coeffs(chi_, build_density_coeffs(phi, S, o));
  prod_ = FourierCoeffs2D(o.F, S.period);
  const double scale = S.period.x * S.period.y;
  for (std::size_t i = 0; i < prod_.c.size(); ++i) prod_.c[i] = scale * f_.c[i] * g_.c[i];
}

namespace {

void check_imag(double max_imag, double max_real) {
  if (max_imag > 1e-10 * std::max(1.0, max_real)) {
    std::ostringstream os;
    os << "far-field output has imaginary residue " << max_imag << " (convention or symmetry error)";
    throw NumericalError(os.str());
  }
}

}  // namespace

std::vector<double> FarField::q_I2_grid(std::size_t n, double* max_imag) const {
  std::vector<double> out(n * n);
  double mi = 0.0, mr = 0.0;
  if (n >= static_cast<std::size_t>(2 * o_.F + 1)) {
    std::vector<cplx> v = eval_on_grid_2d(prod_, n, n, S_.lo);
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = v[i].real();
      mi = std::max(mi, std::fabs(v[i].imag()));
      mr = std::max(mr, std::fabs(v[i].real()));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double im;
        Vec2 x{S_.lo.x + S_.period.x * i / n, S_.lo.y + S_.period.y * j / n};
        out[i * n + j] = q_I2_at(x, &im);
        mi = std::max(mi, std::fabs(im));
        mr = std::max(mr, std::fabs(out[i * n + j]));
      }
  }
  check_imag(mi, mr);
  if (max_imag) *max_imag = mi;
  return out;
}

double FarField::q_I2_at(Vec2 x, double* imag) const {
  cplx v = eval_truncated_series(prod_, x);
  if (imag) *imag = v.imag();
  return v.real();
}

std::vector<double> FarField::q_I2_at(const std::vector<Vec2>& xs, double* max_imag) const {
  std::vector<double> out(xs.size());
  double mi = 0.0, mr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double im;
    out[i] = q_I2_at(xs[i], &im);
    mi = std::max(mi, std::fabs(im));
    mr = std::max(mr, std::fabs(out[i]));
  }
  check_imag(mi, mr);
  if (max_imag) *max_imag = mi;
  return out;
}

}  // namespace tff
