#pragma once

#include <cstdint>

#include "tff/fourier.hpp"
#include "tff/geometry.hpp"

namespace tff {

// C_n = (1/P) int_0^r t log t e^{-2 pi i n t / P} dt.
cplx xlogx_coeff(int n, double r, double P = 2.0);

// C_n for n = -F..F in one pass.
FourierCoeffs1D xlogx_coeffs(double r, int F, double P = 2.0);

// x log|x| chi_[0, r] on [-1, 1].
FourierCoeffs1D radial_series_one_sided(double r_cut, int F);

// |x| log|x| chi_[-a, b] on [-1, 1]; a = 0 reduces to the one-sided series.
FourierCoeffs1D radial_series_two_sided(double a, double b, int F);

struct CharFunOptions {
  std::size_t nodes = 0;  // 0 selects max(4096, 16 F)
  bool both_routes = false;
};

struct CharFunCoeffs {
  FourierCoeffs2D coeffs;
  std::size_t nodes = 0;
  // y-field route, filled when both_routes is set (rows m != 0 otherwise unused).
  FourierCoeffs2D alt;
};

// Coefficients of the indicator of the domain on the cell S, via the
// divergence theorem and boundary quadrature.
CharFunCoeffs charfun_coeffs(const ParamBoundary& b, const Square& S, int F,
                             CharFunOptions opt = {});

// Boundary quadrature nodes: Gauss-Legendre panels on pieces that end at a
// corner, trapezoid on a periodic curve.
struct BoundaryQuadrature {
  std::vector<double> t;
  std::vector<double> w;
};
BoundaryQuadrature boundary_quadrature(const ParamBoundary& b, std::size_t nodes);

}  // namespace tff
