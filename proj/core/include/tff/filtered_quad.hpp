#pragma once

#include <vector>

#include "tff/fourier.hpp"

namespace tff {

struct QuadratureConfig {
  int F = 32;
  int N = 0;  // 0 selects 2F
  double a = -pi;
  double b = pi;

  int nodes() const { return N > 0 ? N : 2 * F; }
  void validate() const;
  std::vector<double> abscissae() const;
};

// Left-endpoint periodic trapezoid rule on [a, b] with samples.size() nodes.
double trapezoid(const std::vector<double>& samples, double a, double b);
cplx trapezoid(const std::vector<cplx>& samples, double a, double b);

// Q_N[f g_F] with g_F the truncated series of g, both on [a, b].
double filtered_integral(const std::vector<double>& f_samples, const FourierCoeffs1D& g, double a,
                         double b);

// Aliasing prediction for Q_N[h] - int h, given the coefficients
// of h on [a, b]: d sum_{k != 0} h_{kN} e^{2 pi i k N a / d}.
cplx aliasing_error(const FourierCoeffs1D& h, int N, double a);

// Same prediction for h = f g_F on [-pi, pi] with N = 2F, from the long
// coefficient vectors of f and g: h_{kN} = sum_{|l| <= F} f_{kN-l} g_l.
// f needs coefficients up to |n| >= max_k kN + F.
cplx aliasing_error(const FourierCoeffs1D& f, const FourierCoeffs1D& g, int F, int max_k = 4);

}  // namespace tff
