#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tff/density.hpp"
#include "tff/farfield.hpp"
#include "tff/geometry.hpp"
#include "tff/nearfield.hpp"
#include "tff/windows.hpp"

namespace tff {

enum class RunMode { Eval, Convergence, Selftest };

struct DomainSpec {
  std::string kind = "teardrop";  // teardrop | disk | ellipse | polyline
  double lx = 3.0, ly = 2.0;      // teardrop
  double radius = 1.0;            // disk
  double a = 1.0, b = 1.0;        // ellipse semi-axes
  Vec2 center{};
  std::vector<Vec2> points;       // polyline
  std::vector<std::size_t> corners;
};

struct DensitySpec {
  std::string kind = "poly_exp";  // poly_exp | one | zero | tabulated
  double scale = 1.0;
  Vec2 lo{}, hi{};
  std::size_t nx = 0, ny = 0;
  std::vector<double> values;     // row-major in x
  std::string file;               // CSV of values, alternative to inline
};

struct SquareSpec {
  SquarePolicy policy = SquarePolicy::Auto;
  double pad = 2.0;
  Vec2 lo{}, period{};
};

struct RunConfig {
  RunMode mode = RunMode::Eval;
  DomainSpec domain;
  DensitySpec density;
  SquareSpec square;
  int F = 64;
  int F_r = 0;       // 0 means F
  int F_theta = 0;   // 0 means F
  bool corner_correction = true;
  WindowParams window{};
  std::optional<WindowParams> kernel;           // w0', w1' override
  std::optional<WindowParams> density_window;
  std::size_t charfun_nodes = 0;
  std::size_t grid_n = 64;
  std::string out_dir = "tff-out";
  bool gnuplot = true;
  std::string cache_dir;  // empty disables the chi cache
  int threads = 0;        // 0 means hardware concurrency
  bool debug_dump = false;

  int near_F_r() const { return F_r > 0 ? F_r : F; }
  int near_F_theta() const { return F_theta > 0 ? F_theta : F; }
};

// Format is picked from the extension: .toml or .json.
RunConfig load_config(const std::string& path);
RunConfig parse_config_toml(const std::string& text);
RunConfig parse_config_json(const std::string& text);
std::string config_to_json(const RunConfig& cfg);

ParamBoundary make_boundary(const DomainSpec& d);
Density make_density(const DensitySpec& d);
Square make_square(const SquareSpec& s, const ParamBoundary& b);
FarFieldOptions make_farfield_options(const RunConfig& cfg, const ParamBoundary& b, const Square& S);
NearFieldOptions make_nearfield_options(const RunConfig& cfg);

// Checks everything that can be checked before any heavy work: window
// widths, resolutions, Omega inside S and the far-field conditions.
// Throws ConfigError.
void validate(const RunConfig& cfg);

}  // namespace tff
