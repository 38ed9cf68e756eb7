#include "tff/series.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "tff/special.hpp"

namespace tff {

cplx xlogx_coeff(int n, double r, double P) {
  if (!(r > 0)) throw NumericalError("xlogx_coeff: cut must be positive");
  const double lr = std::log(r);
  if (n == 0) return r * r * (2 * lr - 1) / (4 * P);
  const double k = two_pi * n / P;
  const double kr = k * r;
  if (std::fabs(kr) < 1.0) {
    // int_0^r t log t e^{-ikt} dt = sum_j (-ik)^j / j! r^{j+2} (log r/(j+2) - 1/(j+2)^2)
    cplx s = 0, a = 1.0;
    for (int j = 0; j < 60; ++j) {
      double q = j + 2.0;
      cplx term = a * (r * r) * (lr / q - 1.0 / (q * q));
      s += term;
      if (std::abs(term) < 1e-18 * std::abs(s)) break;
      a *= cplx(0, -kr) / (j + 1.0);
    }
    return s / P;
  }
  // R(z) = Ei(z) - gamma - log z at z = -ikr
  cplx logz(std::log(std::fabs(kr)), kr > 0 ? -pi / 2 : pi / 2);
  cplx R = ei_imaginary(-kr) - euler_gamma - logz;
  cplx e = std::polar(1.0, -kr);
  cplx val = e * (cplx(0, kr) * lr + lr + 1.0) - 1.0 - lr - R;
  return val / (P * k * k);
}

FourierCoeffs1D xlogx_coeffs(double r, int F, double P) {
  FourierCoeffs1D c(F, P);
  for (int n = 0; n <= F; ++n) {
    c[n] = xlogx_coeff(n, r, P);
    if (n > 0) c[-n] = std::conj(c[n]);
  }
  return c;
}

FourierCoeffs1D radial_series_one_sided(double r_cut, int F) {
  if (!(r_cut > 0 && r_cut <= 1.0)) throw NumericalError("radial series cut must lie in (0, 1]");
  return xlogx_coeffs(r_cut, F, 2.0);
}

FourierCoeffs1D radial_series_two_sided(double a, double b, int F) {
  if (!(a >= 0 && a <= 1.0 && b > 0 && b <= 1.0)) throw NumericalError("radial series cuts must lie in (0, 1]");
  FourierCoeffs1D c = xlogx_coeffs(b, F, 2.0);
  if (a > 0) {
    FourierCoeffs1D ca = xlogx_coeffs(a, F, 2.0);
    for (int n = -F; n <= F; ++n) c[n] += ca[-n];
  }
  return c;
}

BoundaryQuadrature boundary_quadrature(const ParamBoundary& b, std::size_t nodes) {
  BoundaryQuadrature q;
  if (b.periodic()) {
    q.t.resize(nodes);
    q.w.assign(nodes, two_pi / static_cast<double>(nodes));
    for (std::size_t j = 0; j < nodes; ++j) q.t[j] = two_pi * static_cast<double>(j) / nodes;
    return q;
  }
  using GL = boost::math::quadrature::gauss<double, 16>;
  std::vector<double> x, w;
  const auto& ab = GL::abscissa();
  const auto& wt = GL::weights();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    x.push_back(-ab[i]);
    w.push_back(wt[i]);
    x.push_back(ab[i]);
    w.push_back(wt[i]);
  }
  const std::size_t panels_total = std::max<std::size_t>(1, nodes / 16);
  for (const auto& pc : b.pieces()) {
    double len = pc.t_end - pc.t_begin;
    auto panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(panels_total * len / two_pi)));
    double h = len / static_cast<double>(panels);
    for (std::size_t k = 0; k < panels; ++k) {
      double mid = pc.t_begin + h * (k + 0.5);
      for (std::size_t i = 0; i < x.size(); ++i) {
        q.t.push_back(mid + 0.5 * h * x[i]);
        q.w.push_back(0.5 * h * w[i]);
      }
    }
  }
  return q;
}

CharFunCoeffs charfun_coeffs(const ParamBoundary& b, const Square& S, int F, CharFunOptions opt) {
  if (F < 0) throw NumericalError("charfun_coeffs: negative order");
  const std::size_t nodes = opt.nodes > 0 ? opt.nodes : std::max<std::size_t>(4096, 16 * static_cast<std::size_t>(F));
  BoundaryQuadrature q = boundary_quadrature(b, nodes);
  const Eigen::Index nt = static_cast<Eigen::Index>(q.t.size());
  const Eigen::Index W = 2 * F + 1;
  const double P1 = S.period.x, P2 = S.period.y;

  Eigen::MatrixXcd Ex(W, nt), Ey(nt, W);
  Eigen::VectorXd wdy(nt), wdx(nt);
  for (Eigen::Index j = 0; j < nt; ++j) {
    double t = q.t[static_cast<std::size_t>(j)];
    Vec2 p = b(t), v = b.velocity(t);
    wdy[j] = q.w[static_cast<std::size_t>(j)] * v.y;
    wdx[j] = q.w[static_cast<std::size_t>(j)] * v.x;
    for (Eigen::Index m = 0; m < W; ++m) {
      double k1 = two_pi * static_cast<double>(m - F) / P1;
      double k2 = two_pi * static_cast<double>(m - F) / P2;
      Ex(m, j) = std::polar(1.0, -k1 * p.x);
      Ey(j, m) = std::polar(1.0, -k2 * p.y);
    }
  }
  const double area = b.signed_area();
  const double orient = area >= 0 ? 1.0 : -1.0;
  const double norm_c = orient / (P1 * P2);

  CharFunCoeffs out;
  out.nodes = static_cast<std::size_t>(nt);
  out.coeffs = FourierCoeffs2D(F, S.period);
  Eigen::MatrixXcd Mx = (Ex * wdy.asDiagonal()) * Ey;
  for (int m = -F; m <= F; ++m) {
    if (m == 0) continue;
    double k1 = two_pi * m / P1;
    for (int n = -F; n <= F; ++n) out.coeffs(m, n) = norm_c * Mx(m + F, n + F) / cplx(0, -k1);
  }
  Eigen::VectorXcd row = Ey.transpose() * (Ex.row(F).transpose().cwiseProduct(wdx.cast<cplx>()));
  for (int n = -F; n <= F; ++n) {
    if (n == 0) continue;
    double k2 = two_pi * n / P2;
    out.coeffs(0, n) = norm_c * row[n + F] / cplx(0, k2);
  }
  out.coeffs(0, 0) = std::fabs(area) / (P1 * P2);

  if (opt.both_routes) {
    out.alt = out.coeffs;
    Eigen::MatrixXcd My = (Ex * wdx.asDiagonal()) * Ey;
    for (int m = -F; m <= F; ++m)
      for (int n = -F; n <= F; ++n) {
        if (n == 0) continue;
        double k2 = two_pi * n / P2;
        out.alt(m, n) = norm_c * My(m + F, n + F) / cplx(0, k2);
      }
  }
  return out;
}

}  // namespace tff
