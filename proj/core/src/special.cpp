#include "tff/special.hpp"

#include <limits>

namespace tff {

SiCi sici(double x) {
  if (!(x > 0)) throw NumericalError("sici: argument must be positive");
  if (x <= 2.0) {
    // alternating power series, terms t_k = (-1)^k x^k / k!
    double si = 0.0, ci = 0.0;
    double t = 1.0;
    for (int k = 1; k < 60; ++k) {
      t *= x / k;
      if (k % 2 == 1) {
        double term = ((k / 2) % 2 == 0 ? t : -t) / k;
        si += term;
      } else {
        double term = ((k / 2) % 2 == 0 ? t : -t) / k;
        ci += term;
      }
      if (t < 1e-18) break;
    }
    return {si, euler_gamma + std::log(x) + ci};
  }
  // E1(ix) by a modified Lentz continued fraction
  const double tiny = 1e-300;
  cplx b(1.0, x);
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < 100000; ++i) {
    double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  return {pi / 2 + h.imag(), -h.real()};
}

cplx ei_imaginary(double x) {
  if (x == 0.0) throw NumericalError("ei_imaginary: x = 0");
  SiCi s = sici(std::fabs(x));
  double si = x > 0 ? s.si : -s.si;
  return {s.ci, si + (x > 0 ? pi / 2 : -pi / 2)};
}

}  // namespace tff
