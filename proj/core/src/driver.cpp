#include "tff/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tff/io.hpp"
#include "tff/parallel.hpp"

namespace tff {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string where(const char* stage, Vec2 x) {
  std::ostringstream os;
  os.precision(17);
  os << stage << " at (" << x.x << ", " << x.y << "): ";
  return os.str();
}

// Rethrows the in-flight exception with the point and stage prepended,
// keeping the error category.
[[noreturn]] void rethrow_at(const char* stage, Vec2 x) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(where(stage, x) + e.what());
  } catch (const GeometryError& e) {
    throw GeometryError(where(stage, x) + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(where(stage, x) + e.what());
  } catch (const std::exception& e) {
    throw NumericalError(where(stage, x) + e.what());
  }
}

std::string dump_line(const NearFieldPlan& plan, const PointResult& r) {
  nlohmann::json j;
  j["x"] = {r.x.x, r.x.y};
  j["case"] = to_string(plan.window_case);
  j["I1"] = r.I1;
  j["I2"] = r.I2;
  j["total"] = r.total;
  j["n_theta"] = plan.theta.size();
  if (!plan.cut_plus.empty()) {
    auto [lo, hi] = std::minmax_element(plan.cut_plus.begin(), plan.cut_plus.end());
    j["cut_plus_range"] = {*lo, *hi};
  }
  if (plan.fan) {
    const CornerFan& f = *plan.fan;
    j["fan"] = {{"corner", f.corner_index},
                {"t", std::vector<double>(f.t, f.t + 5)},
                {"theta", std::vector<double>(f.theta, f.theta + 5)},
                {"blue_start", f.blue_start},
                {"blue_length", f.blue_length}};
  }
  j["corrected"] = plan.corrected;
  return j.dump();
}

void near_pass(const Problem& p, std::vector<PointResult>& out, const RunOptions& opt, double* secs) {
  auto t0 = std::chrono::steady_clock::now();
  NearFieldSolver solver(p.boundary, p.near);
  std::vector<std::string> dumps(opt.debug_dump_path.empty() ? 0 : out.size());
  parallel_for(out.size(), opt.threads, [&](std::size_t i) {
    PointResult& r = out[i];
    if (!r.inside) return;
    try {
      NearFieldPlan plan = solver.plan(r.x);
      r.window_case = plan.window_case;
      r.I1 = solver.evaluate(plan, p.phi);
      r.total = r.I1 + r.I2;
      if (!dumps.empty()) dumps[i] = dump_line(plan, r);
    } catch (...) {
      rethrow_at("near field", r.x);
    }
  });
  if (!dumps.empty()) {
    std::ofstream os(opt.debug_dump_path);
    if (!os) throw ConfigError("cannot write " + opt.debug_dump_path);
    for (const auto& d : dumps)
      if (!d.empty()) os << d << '\n';
  }
  if (secs) *secs = seconds_since(t0);
}

}  // namespace

Problem Problem::from_config(const RunConfig& cfg) {
  validate(cfg);
  ParamBoundary b = make_boundary(cfg.domain);
  Square S = make_square(cfg.square, b);
  FarFieldOptions far = make_farfield_options(cfg, b, S);
  return Problem{cfg, std::move(b), make_density(cfg.density), S, far, make_nearfield_options(cfg)};
}

std::vector<Vec2> grid_points(const Square& S, std::size_t n) {
  std::vector<Vec2> xs(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      xs[i * n + j] = {S.lo.x + S.period.x * static_cast<double>(i) / static_cast<double>(n),
                       S.lo.y + S.period.y * static_cast<double>(j) / static_cast<double>(n)};
  return xs;
}

std::uint64_t chi_cache_key(const Problem& p) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const void* data, std::size_t len) {
    auto* c = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= c[i];
      h *= 1099511628211ull;
    }
  };
  std::uint64_t bh = p.boundary.hash();
  mix(&bh, sizeof bh);
  for (double v : {p.S.lo.x, p.S.lo.y, p.S.period.x, p.S.period.y}) mix(&v, sizeof v);
  std::int64_t F = p.far.F;
  std::uint64_t nodes = p.far.charfun_nodes;
  mix(&F, sizeof F);
  mix(&nodes, sizeof nodes);
  return h;
}

std::string chi_cache_path(const Problem& p) {
  char name[40];
  std::snprintf(name, sizeof name, "chi-%016llx.tffc", static_cast<unsigned long long>(chi_cache_key(p)));
  return (std::filesystem::path(p.cfg.cache_dir) / name).string();
}

std::string chi_consistency(const Problem& p, const FourierCoeffs2D& chi) {
  std::ostringstream os;
  if (chi.F != p.far.F) {
    os << "order " << chi.F << " != F = " << p.far.F;
    return os.str();
  }
  if (std::fabs(chi.periods.x - p.S.period.x) > 1e-14 * p.S.period.x ||
      std::fabs(chi.periods.y - p.S.period.y) > 1e-14 * p.S.period.y)
    return "periods do not match S";
  const double c00 = p.boundary.signed_area() / (p.S.period.x * p.S.period.y);
  if (!(std::fabs(chi(0, 0) - c00) <= 1e-10)) {
    os << "c00 = " << chi(0, 0).real() << " but |Omega| / (P1 P2) = " << c00;
    return os.str();
  }
  for (int m = -chi.F; m <= chi.F; ++m)
    for (int n = -chi.F; n <= chi.F; ++n) {
      cplx a = chi(m, n), b = std::conj(chi(-m, -n));
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a - b) > 1e-12) {
        os << "coefficient (" << m << ", " << n << ") breaks Hermitian symmetry";
        return os.str();
      }
    }
  return {};
}

FourierCoeffs2D load_or_compute_chi(const Problem& p, bool* hit) {
  if (hit) *hit = false;
  std::string path;
  if (!p.cfg.cache_dir.empty()) {
    path = chi_cache_path(p);
    std::ifstream in(path, std::ios::binary);
    if (in) {
      try {
        FourierCoeffs2D c = read_binary(in);
        if (chi_consistency(p, c).empty()) {
          if (hit) *hit = true;
          return c;
        }
      } catch (const std::exception&) {
      }
    }
  }
  CharFunOptions co;
  co.nodes = p.far.charfun_nodes;
  FourierCoeffs2D c = charfun_coeffs(p.boundary, p.S, p.far.F, co).coeffs;
  if (!path.empty()) {
    ensure_directory(p.cfg.cache_dir);
    std::string tmp = path + ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary);
      if (!os) throw ConfigError("cannot write chi cache " + tmp);
      write_binary(os, c);
    }
    std::filesystem::rename(tmp, path);
  }
  return c;
}

FarField build_far_field(const Problem& p, bool* cache_hit, double* chi_seconds) {
  check_farfield_conditions(p.boundary, p.S, p.far);
  auto t0 = std::chrono::steady_clock::now();
  FourierCoeffs2D chi = load_or_compute_chi(p, cache_hit);
  if (chi_seconds) *chi_seconds = seconds_since(t0);
  return FarField(p.S, p.far, std::move(chi), build_g_coeffs(p.S, p.far), p.phi);
}

GridResult evaluate_grid(const Problem& p, const RunOptions& opt) {
  GridResult g;
  g.S = p.S;
  g.n = p.cfg.grid_n;
  std::vector<Vec2> xs = grid_points(p.S, g.n);
  g.points.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g.points[i].x = xs[i];
    g.points[i].inside = p.boundary.locate(xs[i]) == Location::Inside;
  }

  auto t0 = std::chrono::steady_clock::now();
  FarField far = build_far_field(p, &g.chi_cache_hit, &g.chi_seconds);
  std::vector<double> I2;
  try {
    I2 = far.q_I2_grid(g.n, &g.max_imag);
  } catch (...) {
    rethrow_at("far field", p.S.lo);
  }
  g.far_seconds = seconds_since(t0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g.points[i].I2 = I2[i];
    g.points[i].total = I2[i];
  }
  near_pass(p, g.points, opt, &g.near_seconds);
  return g;
}

std::vector<PointResult> evaluate_points(const Problem& p, const std::vector<Vec2>& xs, const RunOptions& opt) {
  std::vector<PointResult> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i].x = xs[i];
    out[i].inside = p.boundary.locate(xs[i]) == Location::Inside;
  }
  FarField far = build_far_field(p);
  std::vector<double> I2 = far.q_I2_at(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i].I2 = out[i].total = I2[i];
  near_pass(p, out, opt, nullptr);
  return out;
}

}  // namespace tff
