#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tff/types.hpp"

namespace tff {

// Coefficients c_n, n = -F..F, of a d-periodic function in absolute
// coordinates: f(x) ~ sum_n c_n exp(2 pi i n x / d).
struct FourierCoeffs1D {
  int F = 0;
  double period = 1.0;
  std::vector<cplx> c;  // size 2F+1, c[0] is n = -F

  FourierCoeffs1D() = default;
  FourierCoeffs1D(int F_, double period_);

  cplx& operator[](int n) { return c[static_cast<std::size_t>(n + F)]; }
  const cplx& operator[](int n) const { return c[static_cast<std::size_t>(n + F)]; }
};

// Tensor coefficients c_{m,n}, storage row-major in m.
struct FourierCoeffs2D {
  int F = 0;
  Vec2 periods{1.0, 1.0};
  std::vector<cplx> c;  // size (2F+1)^2

  FourierCoeffs2D() = default;
  FourierCoeffs2D(int F_, Vec2 periods_);

  int width() const { return 2 * F + 1; }
  cplx& operator()(int m, int n) { return c[index(m, n)]; }
  const cplx& operator()(int m, int n) const { return c[index(m, n)]; }
  std::size_t index(int m, int n) const {
    return static_cast<std::size_t>(m + F) * static_cast<std::size_t>(width()) +
           static_cast<std::size_t>(n + F);
  }
};

// Samples at x_j = origin + d j / N, j = 0..N-1.
FourierCoeffs1D coeffs_from_samples(const std::vector<cplx>& samples, double period, int F,
                                    double origin = 0.0);
FourierCoeffs1D coeffs_from_samples(const std::vector<double>& samples, double period, int F,
                                    double origin = 0.0);

// Samples on an n0 x n1 grid, row-major in the first axis, at
// origin + (P1 i / n0, P2 j / n1).
FourierCoeffs2D coeffs_from_samples_2d(const std::vector<cplx>& samples, std::size_t n0,
                                       std::size_t n1, Vec2 periods, int F, Vec2 origin = {});

cplx eval_truncated_series(const FourierCoeffs1D& c, double x);
cplx eval_truncated_series(const FourierCoeffs2D& c, Vec2 x);

// Values at origin + d j / N, j = 0..N-1, through one inverse FFT. Modes are
// folded modulo N, so N may be smaller than 2F+1 (this is the aliasing the
// filtered trapezoid rule relies on).
std::vector<cplx> eval_on_grid(const FourierCoeffs1D& c, std::size_t N, double origin = 0.0);
std::vector<cplx> eval_on_grid_2d(const FourierCoeffs2D& c, std::size_t n0, std::size_t n1,
                                  Vec2 origin = {});

// Periodic convolution (a*b)(x) = integral over one period of a(y) b(x-y).
FourierCoeffs1D periodic_convolve(const FourierCoeffs1D& a, const FourierCoeffs1D& b);
FourierCoeffs2D periodic_convolve(const FourierCoeffs2D& a, const FourierCoeffs2D& b);

// Coefficients of the product of the two truncated series, truncated again
// to |m|, |n| <= F.
FourierCoeffs2D coeff_array_convolve_truncated(const FourierCoeffs2D& a, const FourierCoeffs2D& b);
FourierCoeffs2D coeff_array_convolve_direct(const FourierCoeffs2D& a, const FourierCoeffs2D& b);

// Flat binary format: magic "TFFC", u32 version, i32 F, f64 P1, f64 P2,
// then (2F+1)^2 little-endian (re, im) pairs row-major.
void write_binary(std::ostream& os, const FourierCoeffs2D& c);
FourierCoeffs2D read_binary(std::istream& is);
void write_csv(std::ostream& os, const FourierCoeffs2D& c);
void write_csv(std::ostream& os, const FourierCoeffs1D& c);

}  // namespace tff
