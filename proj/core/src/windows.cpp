#include "tff/windows.hpp"

#include <sstream>

namespace tff {

void WindowParams::validate() const {
  if (!(w0 > 0 && w0 < w1)) {
    std::ostringstream os;
    os << "window widths need 0 < w0 < w1 (got w0=" << w0 << ", w1=" << w1 << ")";
    throw ConfigError(os.str());
  }
}

double w1_eval(double r, const WindowParams& p) {
  r = std::fabs(r);
  if (r <= p.w0) return 1.0;
  if (r >= p.w1) return 0.0;
  double u = (r - p.w0) / (p.w1 - p.w0);
  if (u < 1e-15) return 1.0;
  if (u > 1.0 - 1e-15) return 0.0;
  return std::exp(2.0 * std::exp(-1.0 / u) / (u - 1.0));
}

double w2_eval(Vec2 z, const WindowParams& p, Vec2 center) { return w1_eval(norm(z - center), p); }

WindowParams fit_window(double inner, double outer, double margin_fraction) {
  if (!(outer > inner)) {
    std::ostringstream os;
    os << "no room for a window between " << inner << " and " << outer;
    throw ConfigError(os.str());
  }
  double gap = outer - inner;
  return {inner + margin_fraction * gap, outer - margin_fraction * gap};
}

}  // namespace tff
