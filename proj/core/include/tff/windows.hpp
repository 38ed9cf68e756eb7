#pragma once

#include "tff/types.hpp"

namespace tff {

// Radial C-infinity bump: 1 on [0, w0], 0 on [w1, inf).
struct WindowParams {
  double w0 = 0.25;
  double w1 = 1.0;

  void validate() const;
};

double w1_eval(double r, const WindowParams& p);

// Radial periodization window applied to a point relative to `center`.
double w2_eval(Vec2 z, const WindowParams& p, Vec2 center = {});

// Widths with a fractional margin inside the gap (inner, outer).
WindowParams fit_window(double inner, double outer, double margin_fraction = 0.05);

}  // namespace tff
