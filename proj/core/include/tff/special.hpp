#pragma once

#include "tff/types.hpp"

namespace tff {

struct SiCi {
  double si;
  double ci;
};

// Sine and cosine integrals for x > 0.
SiCi sici(double x);

// Exponential integral on the imaginary axis, Ei(ix) = Ci(|x|) + i (Si(x) + sgn(x) pi/2),
// the branch with Ei(z) - gamma - log(z) -> 0 as z -> 0 along the ray.
cplx ei_imaginary(double x);

}  // namespace tff
