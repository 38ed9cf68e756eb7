// tff: log-kernel volume potentials on 2D domains with corners.
//
//   tff eval --config run.toml --out dir
//   tff convergence --points 1.5,0 2.5,0.5 --resolutions 8,16,32,64
//   tff selftest [--strict] [--junit r.xml] [--csv r.csv] [--quadrature-csv q.csv]
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tff/config.hpp"
#include "tff/convergence.hpp"
#include "tff/driver.hpp"
#include "tff/io.hpp"
#include "tff/selftest.hpp"

namespace {

using namespace tff;

struct Global {
  int threads = 0;
  bool debug_dump = false;
  bool full_scale = false;
};

RunConfig config_or_default(const std::string& path) { return path.empty() ? RunConfig{} : load_config(path); }

std::vector<Vec2> parse_points(const std::vector<std::string>& args) {
  std::vector<Vec2> out;
  for (const std::string& a : args) {
    std::istringstream in(a);
    std::string item;
    while (std::getline(in, item, ';')) {
      if (item.empty()) continue;
      double x, y;
      char comma;
      std::istringstream p(item);
      if (!(p >> x >> comma >> y) || comma != ',') throw ConfigError("bad point '" + item + "', expected x,y");
      out.push_back({x, y});
    }
  }
  return out;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  fn(os);
}

int run_eval(const Global& g, const std::string& config, std::string out) {
  RunConfig cfg = config_or_default(config);
  if (g.threads > 0) cfg.threads = g.threads;
  if (g.debug_dump) cfg.debug_dump = true;
  if (out.empty()) out = cfg.out_dir;
  Problem p = Problem::from_config(cfg);
  ensure_directory(out);
  RunOptions ro;
  ro.threads = cfg.threads;
  if (cfg.debug_dump) ro.debug_dump_path = out + "/points.jsonl";
  GridResult res = evaluate_grid(p, ro);
  write_file(out + "/field.csv", [&](std::ostream& os) { write_grid_csv(os, res, p); });
  write_file(out + "/field.bin", [&](std::ostream& os) { write_grid_binary(os, res); });
  write_file(out + "/config.json", [&](std::ostream& os) { os << config_to_json(cfg) << '\n'; });
  if (cfg.gnuplot) write_file(out + "/field.gp", [&](std::ostream& os) { write_field_gnuplot(os, "field.csv"); });
  std::size_t inside = 0;
  for (const auto& r : res.points) inside += r.inside;
  std::fprintf(stderr, "eval: %zux%zu grid, %zu interior points, chi %.2fs%s, far %.2fs, near %.2fs -> %s\n", res.n,
               res.n, inside, res.chi_seconds, res.chi_cache_hit ? " (cached)" : "", res.far_seconds,
               res.near_seconds, out.c_str());
  return 0;
}

int run_convergence(const Global& g, const std::string& config, const std::vector<std::string>& pts,
                    const std::vector<int>& resolutions, std::string out, bool far, bool no_oracle,
                    bool no_baseline) {
  RunConfig cfg = config_or_default(config);
  if (g.threads > 0) cfg.threads = g.threads;
  if (out.empty()) out = cfg.out_dir;
  Problem p = Problem::from_config(cfg);
  std::vector<Vec2> xs = parse_points(pts);
  if (xs.empty()) xs = {{1.5, 0.0}, {2.5, 0.5}, {0.4, -0.2}};
  std::vector<ConvergenceRecord> rs;
  if (far) {
    rs = far_field_convergence(p, xs, resolutions);
  } else {
    ConvergenceOptions o;
    o.resolutions = resolutions;
    o.reference_F = g.full_scale ? 2048 : 512;
    o.oracle = !no_oracle;
    o.baseline = !no_baseline;
    o.threads = cfg.threads;
    rs = near_field_convergence(p, xs, o);
  }
  ensure_directory(out);
  const std::string name = far ? "convergence_far.csv" : "convergence.csv";
  write_file(out + "/" + name, [&](std::ostream& os) { write_convergence_csv(os, rs); });
  if (cfg.gnuplot)
    write_file(out + "/" + name.substr(0, name.size() - 4) + ".gp",
               [&](std::ostream& os) { write_convergence_gnuplot(os, name, rs); });
  for (const auto& r : rs)
    std::printf("%-4s %-16s F=%-5d error=%.3e%s\n", r.id.c_str(), r.series.c_str(), r.F, r.error,
                r.error_oracle >= 0 ? (" oracle=" + std::to_string(r.error_oracle)).c_str() : "");
  return 0;
}

int run_selftest(const Global& g, const std::string& config, bool strict, double tol, std::string junit,
                 std::string csv, std::string quad_csv) {
  RunConfig cfg = config_or_default(config);
  SelftestOptions o;
  o.strict = strict;
  o.tolerance = tol;
  o.threads = g.threads > 0 ? g.threads : cfg.threads;
  SelftestReport r = run_selftest(cfg, o);
  if (!junit.empty()) write_file(junit, [&](std::ostream& os) { write_junit(os, r); });
  if (!csv.empty()) write_file(csv, [&](std::ostream& os) { write_selftest_csv(os, r); });
  if (!quad_csv.empty()) write_file(quad_csv, [&](std::ostream& os) { write_quadrature_csv(os, r); });
  for (const auto& c : r.cases)
    std::printf("%-6s %-14s %-42s %9.2e  %s\n", to_string(c.outcome), c.suite.c_str(), c.name.c_str(), c.measured,
                c.message.c_str());
  std::printf("%zu passed, %zu failed, %zu expected failures, %zu unexpected passes\n", r.count(Outcome::Pass),
              r.count(Outcome::Fail), r.count(Outcome::ExpectedFail), r.count(Outcome::UnexpectedPass));
  return r.ok(strict) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered-Fourier evaluation of log-kernel volume potentials"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "Worker threads for per-point loops (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--debug-dump", g.debug_dump, "Write per-point JSON diagnostics");
  app.add_flag("--full-scale", g.full_scale, "Use the 2^12-node self-reference in convergence studies");

  std::string config, out;
  auto* eval = app.add_subcommand("eval", "Evaluate the potential on the grid over S");
  eval->add_option("--config", config, "TOML or JSON run configuration")->check(CLI::ExistingFile);
  eval->add_option("--out", out, "Output directory");

  std::vector<std::string> points;
  std::vector<int> resolutions{8, 16, 32, 64, 128, 256};
  bool far = false, no_oracle = false, no_baseline = false;
  auto* conv = app.add_subcommand("convergence", "Error against a self-reference as F grows");
  conv->add_option("--config", config, "TOML or JSON run configuration")->check(CLI::ExistingFile);
  conv->add_option("--points", points, "Evaluation points as x,y (repeat or separate with ;)");
  conv->add_option("--resolutions", resolutions, "Increasing list of F values")->delimiter(',');
  conv->add_option("--out", out, "Output directory");
  conv->add_flag("--far", far, "Study the far field against a 2F reference instead of the near field");
  conv->add_flag("--no-oracle", no_oracle, "Skip the adaptive oracle column");
  conv->add_flag("--no-baseline", no_baseline, "Skip the unfiltered trapezoid series");

  bool strict = false;
  double tol = 0.0;
  std::string junit, csv, quad_csv;
  auto* st = app.add_subcommand("selftest", "Run the invariant and oracle suites");
  st->add_option("--config", config, "TOML or JSON run configuration")->check(CLI::ExistingFile);
  st->add_flag("--strict", strict, "Fail on unexpected passes of expected-fail checks");
  st->add_option("--tolerance", tol, "Replace every check's tolerance");
  st->add_option("--junit", junit, "JUnit XML report path");
  st->add_option("--csv", csv, "CSV report path");
  st->add_option("--quadrature-csv", quad_csv, "CSV of (F, error, observed order) for the filtered quadrature");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval) return run_eval(g, config, out);
    if (*conv) return run_convergence(g, config, points, resolutions, out, far, no_oracle, no_baseline);
    if (*st) return run_selftest(g, config, strict, tol, junit, csv, quad_csv);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "tff: configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tff: %s\n", e.what());
    return 1;
  }
  return 2;
}
