#include <benchmark/benchmark.h>

#include "tff/driver.hpp"
#include "tff/series.hpp"
#include "tff/special.hpp"

namespace {

using namespace tff;

void BM_Sici(benchmark::State& st) {
  double x = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(sici(x));
    x = x < 100 ? x * 1.01 : 0.1;
  }
}
BENCHMARK(BM_Sici);

void BM_XlogxCoeffs(benchmark::State& st) {
  const int F = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(xlogx_coeffs(0.7, F));
  st.SetComplexityN(F);
}
BENCHMARK(BM_XlogxCoeffs)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

void BM_CharFun(benchmark::State& st) {
  const int F = static_cast<int>(st.range(0));
  ParamBoundary b = make_teardrop(3, 2);
  Square S = auto_square(b);
  for (auto _ : st) benchmark::DoNotOptimize(charfun_coeffs(b, S, F));
}
BENCHMARK(BM_CharFun)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_NearFieldPoint(benchmark::State& st) {
  const int F = static_cast<int>(st.range(0));
  static const Vec2 pts[3] = {{1.5, 0.0}, {2.5, 0.5}, {0.4, -0.2}};
  const Vec2 x = pts[st.range(1)];
  ParamBoundary b = make_teardrop(3, 2);
  NearFieldSolver s(b, {F, F, {}, true});
  Density phi = density_poly_exp();
  for (auto _ : st) benchmark::DoNotOptimize(s.evaluate(x, phi));
  st.SetLabel(to_string(classify_window_case(x, 1.0, b)));
}
BENCHMARK(BM_NearFieldPoint)
    ->ArgsProduct({{32, 64, 128}, {0, 1, 2}})
    ->Unit(benchmark::kMillisecond);

void BM_FarFieldBuild(benchmark::State& st) {
  RunConfig cfg;
  cfg.F = static_cast<int>(st.range(0));
  Problem p = Problem::from_config(cfg);
  for (auto _ : st) benchmark::DoNotOptimize(build_far_field(p).q_I2_grid(64));
}
BENCHMARK(BM_FarFieldBuild)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
