#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tff/types.hpp"

namespace tff {

// One smooth piece of a boundary. The functions must stay well defined a
// short way outside [t_begin, t_end]; the corner construction evaluates the
// analytic extension of the pieces adjacent to a corner.
struct CurvePiece {
  std::function<Vec2(double)> position;
  std::function<Vec2(double)> velocity;
  double t_begin = 0.0;
  double t_end = two_pi;
};

enum class Location { Inside, Outside, OnBoundary };

struct BoundingBox {
  Vec2 lo;
  Vec2 hi;
  Vec2 center() const { return (lo + hi) * 0.5; }
};

// Closed curve over t in [0, 2pi] made of pieces that tile the interval.
// Corners sit at piece junctions; a curve with no corners is one periodic
// piece.
class ParamBoundary {
 public:
  ParamBoundary(std::string name, std::vector<CurvePiece> pieces, std::vector<double> corners);

  const std::string& name() const { return name_; }
  const std::vector<CurvePiece>& pieces() const { return pieces_; }
  const std::vector<double>& corners() const { return corners_; }
  bool periodic() const { return corners_.empty(); }

  Vec2 operator()(double t) const;
  Vec2 velocity(double t) const;

  // Curve extended past the corner `corner_index` (the corner frame):
  // u in [0, 2pi] follows the boundary from the corner, u < 0 continues the
  // outgoing piece backwards, u > 2pi continues the incoming piece forwards.
  // Values u > 3pi are read as u - 4pi so that the frame has period 4pi.
  Vec2 extended(double u, std::size_t corner_index = 0) const;

  Location locate(Vec2 p, double tol = 1e-12) const;
  double distance(Vec2 p) const;
  double signed_area() const;
  // Upper bound: largest sampled chord plus the sampling sagitta.
  double diameter() const;
  BoundingBox bbox() const;
  double max_radius_about(Vec2 c) const;
  std::vector<Vec2> polygon(std::size_t samples_per_period) const;
  std::uint64_t hash() const;

  // Sample table shared by the distance and location queries.
  struct Sample {
    double t;
    Vec2 p;
  };
  const std::vector<Sample>& samples() const { return samples_; }

 private:
  std::size_t piece_index(double t) const;
  double wrap(double t) const;
  double closest_param(Vec2 p, double* dist) const;

  std::string name_;
  std::vector<CurvePiece> pieces_;
  std::vector<double> corners_;
  std::vector<Sample> samples_;
  double sagitta_ = 0.0;
  double area_ = 0.0;
};

ParamBoundary make_teardrop(double lx, double ly);
ParamBoundary make_disk(double radius, Vec2 center = {});
ParamBoundary make_ellipse(double a, double b, Vec2 center = {});

// Cubic spline interpolation of the points in order. Points flagged as corners
// split the curve into chains; with no corners the spline is periodic.
// Orientation is normalized to counter-clockwise.
ParamBoundary make_spline_polyline(const std::vector<Vec2>& points, const std::vector<bool>& corner);

bool point_in_domain(Vec2 p, const ParamBoundary& b);

// First exit distance along a ray from x, capped at w1.
double ray_boundary_distance(Vec2 x, double theta, double w1, const ParamBoundary& b);

// Distance to the first crossing with the corner-frame segment u in
// [u_lo, u_hi], capped at w1 (no crossing inside the disk gives w1).
double ray_curve_segment_distance(Vec2 x, double theta, const ParamBoundary& b, double u_lo,
                                  double u_hi, double w1, std::size_t corner_index = 0);

enum class WindowCase { FullyInside, SmoothIntersection, CornerIntersection };
const char* to_string(WindowCase c);

WindowCase classify_window_case(Vec2 x, double w1, const ParamBoundary& b);

struct CornerFan {
  std::size_t corner_index = 0;
  double t0 = 0.0;
  // Corner frame parameters: t1 in (0, pi) on the outgoing piece, t2 in
  // (pi, 2pi) on the incoming piece, t3 in (2pi, 3pi) on the incoming
  // extension and t4 in (3pi, 4pi) on the outgoing extension.
  double t[5] = {0, 0, 0, 0, 0};
  double theta[5] = {0, 0, 0, 0, 0};  // in [0, 2pi)
  // The blue indicator covers [blue_start, blue_start + blue_length] (mod 2pi).
  double blue_start = 0.0;
  double blue_length = 0.0;
};

CornerFan corner_fan(Vec2 x, double w1, const ParamBoundary& b);

// Ray caster bound to one evaluation point. Caches the boundary samples that
// can reach the disk of radius w1 about x, so repeated rays cost little.
class RayCaster {
 public:
  struct Segment {
    double u_lo;
    double u_hi;
  };

  RayCaster(const ParamBoundary& b, Vec2 x, double w1, std::vector<Segment> segments = {},
            std::size_t corner_index = 0, std::size_t samples_per_period = 4096);

  double distance(double theta) const;

 private:
  Vec2 eval(double u) const;

  const ParamBoundary& b_;
  Vec2 x_;
  double w1_;
  bool corner_frame_;
  std::size_t corner_index_;
  struct Interval {
    double u0, u1;
    Vec2 p0, p1;
  };
  std::vector<Interval> candidates_;
};

}  // namespace tff
