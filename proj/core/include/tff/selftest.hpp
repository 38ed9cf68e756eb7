#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tff/config.hpp"

namespace tff {

enum class Outcome { Pass, Fail, ExpectedFail, UnexpectedPass };
const char* to_string(Outcome o);

struct SelftestCase {
  std::string suite;
  std::string name;
  Outcome outcome = Outcome::Pass;
  double measured = 0.0;   // error measure, 0 for exact checks
  double tolerance = 0.0;
  double floor = 0.0;      // best attainable error; tolerances below it are marked expected-fail
  std::string message;
  double seconds = 0.0;
};

struct SelftestOptions {
  bool strict = false;           // unexpected passes count as failures
  double tolerance = 0.0;        // > 0 replaces every check's tolerance
  int threads = 0;
};

// One row of the filtered-quadrature convergence table.
struct QuadratureRow {
  std::string filter;  // step | xlogx
  int F = 0;
  double error = 0.0;  // vs the adaptive oracle
  double order = 0.0;  // log2(error(F / 2) / error(F)), NaN on the first row
};

struct SelftestReport {
  std::vector<SelftestCase> cases;
  std::vector<QuadratureRow> quadrature;
  std::size_t count(Outcome o) const;
  bool ok(bool strict) const;
};

SelftestReport run_selftest(const RunConfig& cfg, const SelftestOptions& opt = {});

void write_junit(std::ostream& os, const SelftestReport& r);
void write_selftest_csv(std::ostream& os, const SelftestReport& r);
void write_quadrature_csv(std::ostream& os, const SelftestReport& r);

}  // namespace tff
