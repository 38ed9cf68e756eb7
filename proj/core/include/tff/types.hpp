#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace tff {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Axis-aligned periodic cell [lo.x, lo.x + period.x) x [lo.y, lo.y + period.y).
struct Square {
  Vec2 lo;
  Vec2 period;

  Vec2 center() const { return lo + 0.5 * period; }
  bool contains(Vec2 p) const {
    return p.x >= lo.x && p.x <= lo.x + period.x && p.y >= lo.y && p.y <= lo.y + period.y;
  }
};

// Error hierarchy. The CLI maps ConfigError to exit code 2 and everything
// else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tff
