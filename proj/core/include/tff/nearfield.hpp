#pragma once

#include <optional>
#include <vector>

#include "tff/density.hpp"
#include "tff/filtered_quad.hpp"
#include "tff/geometry.hpp"
#include "tff/windows.hpp"

namespace tff {

struct NearFieldOptions {
  int F_r = 64;
  int F_theta = 64;
  WindowParams window{};
  bool corner_correction = true;
};

// Cut data for one evaluation point.
struct NearFieldPlan {
  Vec2 x;
  // A corner where W1 is numerically zero is treated as case 2.
  WindowCase window_case = WindowCase::FullyInside;
  std::vector<double> theta;
  // Cases 1-2: cut_plus = f_r(theta), cut_minus = f_r(theta + pi), theta in [0, pi).
  // Case 3 corrected: cut_plus = r_red, cut_minus = r_blue, chi = filtered
  // blue indicator; theta in [-pi, pi).
  // Case 3 uncorrected: cut_plus = f_r(theta), theta in [-pi, pi).
  std::vector<double> cut_plus;
  std::vector<double> cut_minus;
  std::vector<double> chi;
  std::optional<CornerFan> fan;
  bool corrected = false;
};

class NearFieldSolver {
 public:
  NearFieldSolver(const ParamBoundary& b, NearFieldOptions opt);

  const NearFieldOptions& options() const { return opt_; }
  const std::vector<double>& radial_nodes() const { return r_; }

  NearFieldPlan plan(Vec2 x) const;

  // Filtered radial integral of |r| log|r| chi_[-cut_minus, cut_plus] phi W1
  // along direction theta. cut_minus = 0 gives the one-sided series.
  double radial_integral(Vec2 x, double theta, double cut_plus, double cut_minus,
                         const Density& phi) const;

  double evaluate(const NearFieldPlan& p, const Density& phi) const;
  double evaluate(Vec2 x, const Density& phi) const { return evaluate(plan(x), phi); }

  // Unfiltered trapezoid of the raw radial integrand on the same nodes,
  // kept as a convergence baseline.
  double evaluate_unfiltered(const NearFieldPlan& p, const Density& phi) const;

 private:
  double interior(const NearFieldPlan& p, const Density& phi) const;
  double corner(const NearFieldPlan& p, const Density& phi) const;

  const ParamBoundary& b_;
  NearFieldOptions opt_;
  std::vector<double> r_;
  std::vector<double> w1_table_;
  std::vector<cplx> full_window_series_;  // two-sided series samples for cuts (w1, w1)
};

// Angular indicator of [start, start + length] on [-pi, pi], truncated.
FourierCoeffs1D box_coeffs(double start, double length, int F);

}  // namespace tff
