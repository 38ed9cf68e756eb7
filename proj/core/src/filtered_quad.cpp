#include "tff/filtered_quad.hpp"

#include <sstream>

namespace tff {

void QuadratureConfig::validate() const {
  if (F < 1) throw ConfigError("quadrature order F must be >= 1");
  if (nodes() < 2 * F) {
    std::ostringstream os;
    os << "quadrature needs N >= 2F (N=" << nodes() << ", F=" << F << ")";
    throw ConfigError(os.str());
  }
  if (!(b > a)) throw ConfigError("quadrature interval must satisfy b > a");
}

std::vector<double> QuadratureConfig::abscissae() const {
  const int n = nodes();
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = a + (b - a) * k / n;
  return x;
}

double trapezoid(const std::vector<double>& s, double a, double b) {
  if (s.empty()) return 0.0;
  double sum = 0.0;
  for (double v : s) sum += v;
  return (b - a) / static_cast<double>(s.size()) * sum;
}

cplx trapezoid(const std::vector<cplx>& s, double a, double b) {
  if (s.empty()) return 0.0;
  cplx sum = 0.0;
  for (const cplx& v : s) sum += v;
  return (b - a) / static_cast<double>(s.size()) * sum;
}

double filtered_integral(const std::vector<double>& f, const FourierCoeffs1D& g, double a, double b) {
  if (std::fabs(g.period - (b - a)) > 1e-12 * (b - a))
    throw NumericalError("filtered_integral: coefficient period differs from the interval length");
  if (f.size() < static_cast<std::size_t>(2 * g.F))
    throw NumericalError("filtered_integral: fewer than 2F nodes");
  std::vector<cplx> gv = eval_on_grid(g, f.size(), a);
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += f[j] * gv[j].real();
  return (b - a) / static_cast<double>(f.size()) * sum;
}

cplx aliasing_error(const FourierCoeffs1D& h, int N, double a) {
  if (N < 1) throw NumericalError("aliasing_error: N must be positive");
  const double d = h.period;
  cplx s = 0;
  for (int k = 1; k * N <= h.F; ++k) {
    int n = k * N;
    s += h[n] * std::polar(1.0, two_pi * n * a / d) + h[-n] * std::polar(1.0, -two_pi * n * a / d);
  }
  return d * s;
}

cplx aliasing_error(const FourierCoeffs1D& f, const FourierCoeffs1D& g, int F, int max_k) {
  const int N = 2 * F;
  if (f.F < max_k * N + F) throw NumericalError("aliasing_error: insufficient tail coefficients");
  if (g.F < F) throw NumericalError("aliasing_error: g coefficients shorter than F");
  cplx s = 0;
  for (int k = -max_k; k <= max_k; ++k) {
    if (k == 0) continue;
    cplx hk = 0;
    for (int l = -F; l <= F; ++l) hk += f[k * N - l] * g[l];
    s += hk;
  }
  return f.period * s;
}

}  // namespace tff
