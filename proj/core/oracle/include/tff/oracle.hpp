#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tff/density.hpp"
#include "tff/geometry.hpp"

// Reference integrators for verification. Nothing here is used by the
// production evaluation path.
namespace tff::oracle {

struct ReferenceResult {
  double value = 0.0;
  double estimated_error = 0.0;
  std::string method;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct AdaptiveOptions {
  double abs_tol = 1e-13;
  int max_depth = 60;
  std::size_t max_intervals = 2'000'000;
};

// Adaptive bisection with a 15-point Gauss-Kronrod pair as base rule.
// Breakpoints split the interval first (use them at singularities and kinks).
ReferenceResult integrate(const std::function<double(double)>& f, double a, double b,
                          AdaptiveOptions opt = {}, std::vector<double> breakpoints = {});

struct ComplexResult {
  cplx value;
  double estimated_error = 0.0;
  bool converged = true;
};
ComplexResult integrate_complex(const std::function<cplx(double)>& f, double a, double b,
                                AdaptiveOptions opt = {}, std::vector<double> breakpoints = {});

// (1/P) int_0^r t log t exp(-2 pi i n t / P) dt.
cplx coefficient_quadrature_oracle(int n, double r, double P, double tol = 1e-14);

// (1/d) int_a^{a+d} f(x) exp(-2 pi i n x / d) dx.
cplx fourier_coefficient(const std::function<double(double)>& f, int n, double a, double d, double tol = 1e-14);

// Ray crossings of the polygonized boundary refined on the true curve.
class RayOracle {
 public:
  RayOracle(const ParamBoundary& b, std::size_t segments = 20000);
  // Sorted positive distances at which the ray from x crosses the boundary.
  std::vector<double> crossings(Vec2 x, double theta) const;

 private:
  const ParamBoundary& b_;
  std::vector<double> t_;
  std::vector<Vec2> p_;
};

// int_Omega K(|x-y|) phi(y) dy in polar coordinates about x; kernel(r) is
// the radial factor including the Jacobian r.
ReferenceResult polar_reference(Vec2 x, const ParamBoundary& b, const Density& phi,
                                const std::function<double(double)>& kernel, double tol,
                                std::vector<double> angle_breaks = {}, std::vector<double> radial_breaks = {},
                                double r_max = 1e300);

// int_Omega log|x-y| phi(y) dy.
ReferenceResult singular_convolution_reference(Vec2 x, const ParamBoundary& b, const Density& phi,
                                               double tol = 1e-10);

// Newtonian log potential of the uniform unit-density disk of radius R about the origin.
double disk_potential_analytic(Vec2 x, double R);

// Even-odd test on an explicit polygon.
bool winding_inside(const std::vector<Vec2>& poly, Vec2 p);

// Nearest positive crossing of the ray with a polyline, capped at cap.
double polyline_ray_distance(const std::vector<Vec2>& poly, Vec2 x, double theta, double cap, bool closed);

// Key-value cache of reference values on disk (CSV: key,value,error).
class ReferenceCache {
 public:
  explicit ReferenceCache(std::string path);
  bool lookup(const std::string& key, ReferenceResult& out) const;
  void store(const std::string& key, const ReferenceResult& r);
  void flush() const;

 private:
  std::string path_;
  std::map<std::string, ReferenceResult> entries_;
};

}  // namespace tff::oracle
