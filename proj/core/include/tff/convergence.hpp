#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tff/driver.hpp"

namespace tff {

struct ConvergenceRecord {
  std::string id;      // point id, e.g. "p0"
  Vec2 x;
  std::string series;  // tff | tff_uncorrected | trapezoid | far
  int F = 0;           // F_r = F_theta = F for near-field series
  double value = 0.0;
  double error = 0.0;         // vs the self-reference
  double error_oracle = -1.0; // vs the adaptive oracle, -1 when not computed
  std::string reference_id;
  double wall_seconds = 0.0;
};

struct ConvergenceOptions {
  std::vector<int> resolutions{8, 16, 32, 64, 128, 256};
  int reference_F = 512;  // N = 2F = 2^10 nodes per direction
  bool baseline = true;   // unfiltered trapezoid series
  bool uncorrected = true;  // extra series at corner points
  bool oracle = true;
  double oracle_tol = 1e-11;
  int threads = 0;
};

// Near field I1 at each point as F_r = F_theta = F grows.
std::vector<ConvergenceRecord> near_field_convergence(const Problem& p, const std::vector<Vec2>& points,
                                                      const ConvergenceOptions& opt);

// Far field Q[I2] at each point; the reference for F is the run at 2F.
std::vector<ConvergenceRecord> far_field_convergence(const Problem& p, const std::vector<Vec2>& points,
                                                     const std::vector<int>& resolutions);

// Adaptive reference for I1 at x.
double near_field_oracle(const Problem& p, Vec2 x, double tol);

// log2 of successive error ratios of one (id, series) run, in resolution order.
std::vector<double> observed_orders(const std::vector<ConvergenceRecord>& rs, const std::string& id,
                                    const std::string& series);
std::vector<ConvergenceRecord> select(const std::vector<ConvergenceRecord>& rs, const std::string& id,
                                      const std::string& series);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& rs);
void write_convergence_gnuplot(std::ostream& os, const std::string& csv_name,
                               const std::vector<ConvergenceRecord>& rs);

}  // namespace tff
