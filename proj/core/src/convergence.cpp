#include "tff/convergence.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "tff/io.hpp"
#include "tff/oracle.hpp"
#include "tff/parallel.hpp"

namespace tff {

namespace {

void check_resolutions(const std::vector<int>& rs, int ref) {
  if (rs.empty()) throw ConfigError("convergence: no resolutions given");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i] < 1) throw ConfigError("convergence: resolutions must be >= 1");
    if (i > 0 && rs[i] <= rs[i - 1]) throw ConfigError("convergence: resolutions must be strictly increasing");
  }
  if (ref > 0 && rs.back() >= ref) throw ConfigError("convergence: max resolution must be below the reference");
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Angles at which the boundary crosses the circle |y - x| = w1, where the
// radial integrand's support changes shape.
std::vector<double> circle_crossings(const ParamBoundary& b, Vec2 x, double w1) {
  const auto& s = b.samples();
  std::vector<double> out;
  auto g = [&](double t) { return norm(b(t) - x) - w1; };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& a = s[i];
    const auto& c = s[(i + 1) % s.size()];
    double ga = norm(a.p - x) - w1, gc = norm(c.p - x) - w1;
    if ((ga < 0) == (gc < 0)) continue;
    double lo = a.t, hi = i + 1 == s.size() ? c.t + two_pi : c.t;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      if ((g(mid) < 0) == (ga < 0)) lo = mid;
      else hi = mid;
    }
    Vec2 q = b(0.5 * (lo + hi)) - x;
    double th = std::atan2(q.y, q.x);
    out.push_back(th < 0 ? th + two_pi : th);
  }
  return out;
}

}  // namespace

double near_field_oracle(const Problem& p, Vec2 x, double tol) {
  const WindowParams& w = p.near.window;
  auto kernel = [&](double r) { return r > 0 ? r * std::log(r) * w1_eval(r, w) : 0.0; };
  std::vector<double> breaks = circle_crossings(p.boundary, x, w.w1);
  auto r = oracle::polar_reference(x, p.boundary, p.phi, kernel, tol, breaks, {w.w0}, w.w1);
  if (!r.converged) throw NumericalError("near-field oracle did not converge");
  return r.value;
}

std::vector<ConvergenceRecord> near_field_convergence(const Problem& p, const std::vector<Vec2>& points,
                                                      const ConvergenceOptions& opt) {
  check_resolutions(opt.resolutions, opt.reference_F);
  for (Vec2 x : points)
    if (p.boundary.locate(x) != Location::Inside) throw GeometryError("convergence point is not inside the domain");

  struct Job {
    std::size_t point;
    int F;
    std::string series;
  };
  std::vector<Job> jobs;
  std::vector<bool> corner(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    corner[i] = classify_window_case(points[i], p.near.window.w1, p.boundary) == WindowCase::CornerIntersection;
    jobs.push_back({i, opt.reference_F, "reference"});
    for (int F : opt.resolutions) {
      jobs.push_back({i, F, "tff"});
      if (opt.baseline) jobs.push_back({i, F, "trapezoid"});
      if (opt.uncorrected && corner[i] && p.near.corner_correction) jobs.push_back({i, F, "tff_uncorrected"});
    }
  }
  std::vector<double> value(jobs.size()), secs(jobs.size());
  parallel_for(jobs.size(), opt.threads, [&](std::size_t k) {
    const Job& j = jobs[k];
    auto t0 = std::chrono::steady_clock::now();
    NearFieldOptions o = p.near;
    o.F_r = o.F_theta = j.F;
    if (j.series == "tff_uncorrected") o.corner_correction = false;
    NearFieldSolver s(p.boundary, o);
    NearFieldPlan plan = s.plan(points[j.point]);
    value[k] = j.series == "trapezoid" ? s.evaluate_unfiltered(plan, p.phi) : s.evaluate(plan, p.phi);
    secs[k] = since(t0);
  });

  std::vector<double> oracle_value(points.size(), 0.0);
  if (opt.oracle) {
    parallel_for(points.size(), opt.threads,
                 [&](std::size_t i) { oracle_value[i] = near_field_oracle(p, points[i], opt.oracle_tol); });
  }

  std::map<std::size_t, double> ref;
  for (std::size_t k = 0; k < jobs.size(); ++k)
    if (jobs[k].series == "reference") ref[jobs[k].point] = value[k];
  const std::string ref_id = "self:N=" + std::to_string(2 * opt.reference_F);
  std::vector<ConvergenceRecord> out;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const Job& j = jobs[k];
    if (j.series == "reference") continue;
    ConvergenceRecord r;
    r.id = "p" + std::to_string(j.point);
    r.x = points[j.point];
    r.series = j.series;
    r.F = j.F;
    r.value = value[k];
    r.error = std::fabs(value[k] - ref[j.point]);
    if (opt.oracle) r.error_oracle = std::fabs(value[k] - oracle_value[j.point]);
    r.reference_id = ref_id;
    r.wall_seconds = secs[k];
    out.push_back(r);
  }
  return out;
}

std::vector<ConvergenceRecord> far_field_convergence(const Problem& p, const std::vector<Vec2>& points,
                                                     const std::vector<int>& resolutions) {
  check_resolutions(resolutions, 0);
  std::set<int> Fs(resolutions.begin(), resolutions.end());
  for (int F : resolutions) Fs.insert(2 * F);
  std::map<int, std::vector<double>> vals;
  std::map<int, double> secs;
  for (int F : Fs) {
    auto t0 = std::chrono::steady_clock::now();
    Problem q = p;
    q.far.F = F;
    q.cfg.F = F;
    vals[F] = build_far_field(q).q_I2_at(points);
    secs[F] = since(t0);
  }
  std::vector<ConvergenceRecord> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int F : resolutions) {
      ConvergenceRecord r;
      r.id = "p" + std::to_string(i);
      r.x = points[i];
      r.series = "far";
      r.F = F;
      r.value = vals[F][i];
      r.error = std::fabs(vals[F][i] - vals[2 * F][i]);
      r.reference_id = "self:F=" + std::to_string(2 * F);
      r.wall_seconds = secs[F];
      out.push_back(r);
    }
  return out;
}

std::vector<ConvergenceRecord> select(const std::vector<ConvergenceRecord>& rs, const std::string& id,
                                      const std::string& series) {
  std::vector<ConvergenceRecord> out;
  for (const auto& r : rs)
    if (r.id == id && r.series == series) out.push_back(r);
  return out;
}

std::vector<double> observed_orders(const std::vector<ConvergenceRecord>& rs, const std::string& id,
                                    const std::string& series) {
  std::vector<ConvergenceRecord> s = select(rs, id, series);
  std::vector<double> out;
  for (std::size_t i = 1; i < s.size(); ++i)
    out.push_back(std::log(s[i - 1].error / s[i].error) / std::log(static_cast<double>(s[i].F) / s[i - 1].F));
  return out;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& rs) {
  os << "# absolute errors; error is against reference_id, error_oracle against the adaptive"
        " polar oracle (-1 = not computed); F = F_r = F_theta for near-field series\n";
  os << "id,x1,x2,series,F,value,error,error_oracle,reference_id,wall_seconds\n";
  for (const auto& r : rs)
    os << r.id << ',' << format_double(r.x.x) << ',' << format_double(r.x.y) << ',' << r.series << ',' << r.F
       << ',' << format_double(r.value) << ',' << format_double(r.error) << ',' << format_double(r.error_oracle)
       << ',' << r.reference_id << ',' << format_double(r.wall_seconds) << '\n';
}

void write_convergence_gnuplot(std::ostream& os, const std::string& csv_name,
                               const std::vector<ConvergenceRecord>& rs) {
  std::set<std::pair<std::string, std::string>> runs;
  for (const auto& r : rs) runs.insert({r.id, r.series});
  os << "set datafile separator ','\n"
        "set logscale xy 2\n"
        "set format y '10^{%L}'\n"
        "set xlabel 'F'\n"
        "set ylabel 'absolute error'\n"
        "set key outside\n"
        "plot ";
  bool first = true;
  for (const auto& [id, series] : runs) {
    if (!first) os << ", \\\n     ";
    first = false;
    os << "'" << csv_name << "' using (strcol(1) eq '" << id << "' && strcol(4) eq '" << series
       << "' ? $5 : 1/0):7 with linespoints title '" << id << " " << series << "'";
  }
  os << '\n';
}

}  // namespace tff
