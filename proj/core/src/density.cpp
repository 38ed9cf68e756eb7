#include "tff/density.hpp"

#include <algorithm>
#include <memory>

namespace tff {

Density density_poly_exp() {
  return {"poly_exp", [](Vec2 y) { return y.x * y.x * y.x * std::exp(-y.y); }};
}

Density density_one() {
  return {"one", [](Vec2) { return 1.0; }};
}

Density density_zero() {
  return {"zero", [](Vec2) { return 0.0; }};
}

Density density_scaled(const Density& d, double s) {
  auto f = d.f;
  return {d.id + "*" + std::to_string(s), [f, s](Vec2 y) { return s * f(y); }};
}

Density density_tabulated(Vec2 lo, Vec2 hi, std::size_t nx, std::size_t ny, std::vector<double> values) {
  if (nx < 4 || ny < 4) throw ConfigError("tabulated density needs at least 4x4 values");
  if (values.size() != nx * ny) throw ConfigError("tabulated density: value count mismatch");
  if (!(hi.x > lo.x && hi.y > lo.y)) throw ConfigError("tabulated density: empty rectangle");
  auto v = std::make_shared<std::vector<double>>(std::move(values));
  const double hx = (hi.x - lo.x) / static_cast<double>(nx - 1);
  const double hy = (hi.y - lo.y) / static_cast<double>(ny - 1);
  auto at = [v, nx, ny](long i, long j) {
    i = std::clamp(i, 0L, static_cast<long>(nx) - 1);
    j = std::clamp(j, 0L, static_cast<long>(ny) - 1);
    return (*v)[static_cast<std::size_t>(i) * ny + static_cast<std::size_t>(j)];
  };
  auto cr = [](double p0, double p1, double p2, double p3, double t) {
    return p1 + 0.5 * t * (p2 - p0 + t * (2 * p0 - 5 * p1 + 4 * p2 - p3 + t * (3 * (p1 - p2) + p3 - p0)));
  };
  auto f = [=](Vec2 y) {
    double u = std::clamp((y.x - lo.x) / hx, 0.0, static_cast<double>(nx - 1));
    double w = std::clamp((y.y - lo.y) / hy, 0.0, static_cast<double>(ny - 1));
    long i = std::min(static_cast<long>(u), static_cast<long>(nx) - 2);
    long j = std::min(static_cast<long>(w), static_cast<long>(ny) - 2);
    double tu = u - i, tw = w - j;
    double col[4];
    for (int a = 0; a < 4; ++a)
      col[a] = cr(at(i - 1 + a, j - 1), at(i - 1 + a, j), at(i - 1 + a, j + 1), at(i - 1 + a, j + 2), tw);
    return cr(col[0], col[1], col[2], col[3], tu);
  };
  return {"tabulated", f};
}

}  // namespace tff
