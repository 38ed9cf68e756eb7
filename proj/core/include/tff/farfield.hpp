#pragma once

#include <vector>

#include "tff/density.hpp"
#include "tff/fourier.hpp"
#include "tff/geometry.hpp"
#include "tff/series.hpp"
#include "tff/windows.hpp"

namespace tff {

enum class SquarePolicy { Auto, Wide, Explicit };

// Periodic cell centred on the bounding-box centre, half-width
// max(diam, R_c) + pad, where R_c is the domain radius about that centre.
Square auto_square(const ParamBoundary& b, double pad = 2.0);
Square wide_square();

struct FarFieldOptions {
  int F = 64;
  WindowParams window{};   // W1, shared with the near field
  WindowParams kernel{};   // W2 on x - y, origin centred
  WindowParams density{};  // periodization window for phi, centred at density_center
  Vec2 density_center{};
  int oversample = 2;
  std::size_t charfun_nodes = 0;
};

// Default W2 widths from the geometry of the domain inside S.
FarFieldOptions default_farfield_options(const ParamBoundary& b, const Square& S, int F,
                                          WindowParams w1 = {});

// Numerical check of the conditions on S and the windows. Throws ConfigError.
void check_farfield_conditions(const ParamBoundary& b, const Square& S, const FarFieldOptions& o);

FourierCoeffs2D build_g_coeffs(const Square& S, const FarFieldOptions& o);
FourierCoeffs2D build_density_coeffs(const Density& phi, const Square& S, const FarFieldOptions& o);
FourierCoeffs2D build_f_coeffs(const FourierCoeffs2D& chi, const FourierCoeffs2D& phi);

class FarField {
 public:
  FarField(const ParamBoundary& b, const Square& S, FarFieldOptions o, const Density& phi);
  FarField(const Square& S, FarFieldOptions o, FourierCoeffs2D chi, FourierCoeffs2D g,
           const Density& phi);

  const Square& square() const { return S_; }
  const FarFieldOptions& options() const { return o_; }
  const FourierCoeffs2D& chi() const { return chi_; }
  const FourierCoeffs2D& g() const { return g_; }
  const FourierCoeffs2D& f() const { return f_; }

  // Values on the n x n grid S.lo + P (i, j) / n.
  std::vector<double> q_I2_grid(std::size_t n, double* max_imag = nullptr) const;
  double q_I2_at(Vec2 x, double* imag = nullptr) const;
  std::vector<double> q_I2_at(const std::vector<Vec2>& xs, double* max_imag = nullptr) const;

 private:
  Square S_;
  FarFieldOptions o_;
  FourierCoeffs2D chi_;
  FourierCoeffs2D g_;
  FourierCoeffs2D f_;
  FourierCoeffs2D prod_;  // P1 P2 f g
};

}  // namespace tff
