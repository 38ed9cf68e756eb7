#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tff/types.hpp"

namespace tff {

struct Density {
  std::string id;
  std::function<double(Vec2)> f;

  double operator()(Vec2 y) const { return f(y); }
};

Density density_poly_exp();  // y1^3 exp(-y2)
Density density_one();
Density density_zero();
Density density_scaled(const Density& d, double s);

// Bicubic (Catmull-Rom) interpolation of values on a rectangular grid,
// row-major in x. Clamped outside the table.
Density density_tabulated(Vec2 lo, Vec2 hi, std::size_t nx, std::size_t ny,
                          std::vector<double> values);

}  // namespace tff
