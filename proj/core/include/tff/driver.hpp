#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tff/config.hpp"
#include "tff/farfield.hpp"
#include "tff/nearfield.hpp"

namespace tff {

// Immutable precomputation shared by every evaluation point.
struct Problem {
  RunConfig cfg;
  ParamBoundary boundary;
  Density phi;
  Square S;
  FarFieldOptions far;
  NearFieldOptions near;

  static Problem from_config(const RunConfig& cfg);
};

struct PointResult {
  Vec2 x;
  bool inside = false;
  WindowCase window_case = WindowCase::FullyInside;
  double I1 = 0.0;  // 0 outside the domain
  double I2 = 0.0;
  double total = 0.0;
};

struct GridResult {
  Square S;
  std::size_t n = 0;
  std::vector<PointResult> points;  // row-major in x: index i * n + j
  double max_imag = 0.0;
  bool chi_cache_hit = false;
  double chi_seconds = 0.0, far_seconds = 0.0, near_seconds = 0.0;
};

struct RunOptions {
  int threads = 0;
  std::string debug_dump_path;  // JSON lines, one per interior point; empty disables
};

// Grid points x_ij = S.lo + P (i, j) / n.
std::vector<Vec2> grid_points(const Square& S, std::size_t n);

GridResult evaluate_grid(const Problem& p, const RunOptions& opt = {});

// I1 + Q[I2] at scattered interior points with one far-field build.
std::vector<PointResult> evaluate_points(const Problem& p, const std::vector<Vec2>& xs,
                                         const RunOptions& opt = {});

// chi cache: <dir>/chi-<16 hex digits>.tffc, key = FNV-1a of the boundary
// hash, S, F and the boundary node count.
std::uint64_t chi_cache_key(const Problem& p);
std::string chi_cache_path(const Problem& p);

// Sanity of a coefficient table against the domain: c00 = |Omega| / (P1 P2)
// and Hermitian symmetry. Returns an empty string when consistent.
std::string chi_consistency(const Problem& p, const FourierCoeffs2D& chi);

// Loads the cached table when present and consistent, else computes and
// (when a cache dir is set) stores it. `hit` reports a cache hit.
FourierCoeffs2D load_or_compute_chi(const Problem& p, bool* hit = nullptr);

FarField build_far_field(const Problem& p, bool* cache_hit = nullptr, double* chi_seconds = nullptr);

}  // namespace tff
