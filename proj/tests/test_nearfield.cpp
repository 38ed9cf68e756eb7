#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tff/convergence.hpp"
#include "tff/driver.hpp"
#include "tff/nearfield.hpp"
#include "tff/oracle.hpp"

using namespace tff;

namespace {

const Problem& problem() {
  static const Problem p = Problem::from_config(RunConfig{});
  return p;
}

const ParamBoundary& teardrop() { return problem().boundary; }

double solve(Vec2 x, int F, bool corrected = true, const Density& phi = density_poly_exp()) {
  NearFieldSolver s(teardrop(), {F, F, {}, corrected});
  return s.evaluate(x, phi);
}

double oracle_I1(Vec2 x) { return near_field_oracle(problem(), x, 1e-12); }

const Vec2 smooth_inside{1.5, 0.0}, smooth_cut{2.5, 0.5}, corner_pt{0.4, -0.2};

}  // namespace

TEST(NearField, RejectsWideWindowAndBadOrders) {
  EXPECT_THROW(NearFieldSolver(teardrop(), {16, 16, {0.25, 1.5}, true}), ConfigError);
  EXPECT_THROW(NearFieldSolver(teardrop(), {0, 16, {}, true}), ConfigError);
  EXPECT_THROW(NearFieldSolver(teardrop(), {16, 0, {}, true}), ConfigError);
}

TEST(NearField, RadialNodesAreTwoFOnUnitInterval) {
  NearFieldSolver s(teardrop(), {24, 16, {}, true});
  const auto& r = s.radial_nodes();
  ASSERT_EQ(r.size(), 48u);
  EXPECT_DOUBLE_EQ(r.front(), -1.0);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_NEAR(r[i] - r[i - 1], 2.0 / 48, 1e-15);
}

TEST(NearField, ZeroDensityGivesZero) {
  for (Vec2 x : {smooth_inside, smooth_cut, corner_pt}) {
    EXPECT_EQ(solve(x, 32, true, density_zero()), 0.0);
    EXPECT_EQ(solve(x, 32, false, density_zero()), 0.0);
  }
  NearFieldSolver s(teardrop(), {32, 32, {}, true});
  EXPECT_EQ(s.radial_integral(smooth_inside, 0.3, 1.0, 1.0, density_zero()), 0.0);
}

// |r| log|r| is even, so the full symmetric cut gives twice the one-sided integral.
TEST(NearField, RadialIntegralFullCutAtDiskCentre) {
  ParamBoundary d = make_disk(2.0);
  NearFieldSolver s(d, {128, 64, {}, true});
  WindowParams w;
  auto ref = oracle::integrate([&](double r) { return r > 0 ? r * std::log(r) * w1_eval(r, w) : 0.0; }, 0.0, 1.0,
                               {}, {0.25});
  for (double th : {0.0, 1.0, 2.5}) EXPECT_NEAR(s.radial_integral({}, th, 1.0, 1.0, density_one()), 2 * ref.value, 1e-12);
}

TEST(NearField, RadialIntegralMatchesOneDimensionalOracle) {
  const Vec2 x = smooth_inside;
  const double th = 0.0;
  double cp = ray_boundary_distance(x, th, 1.0, teardrop());
  double cm = ray_boundary_distance(x, th + pi, 1.0, teardrop());
  NearFieldSolver s(teardrop(), {256, 64, {}, true});
  Density phi = density_poly_exp();
  WindowParams w;
  Vec2 e = unit(th);
  oracle::AdaptiveOptions o;
  o.abs_tol = 1e-13;
  auto ref = oracle::integrate(
      [&](double r) {
        double a = std::fabs(r);
        return a > 0 ? a * std::log(a) * w1_eval(a, w) * phi(x + e * r) : 0.0;
      },
      -cm, cp, o, {-0.25, 0.0, 0.25});
  EXPECT_NEAR(s.radial_integral(x, th, cp, cm, phi), ref.value, 1e-8);
}

TEST(NearField, DiskCentreMatchesRadialReduction) {
  ParamBoundary d = make_disk(1.0);
  NearFieldSolver s(d, {64, 64, {}, true});
  WindowParams w;
  auto ref = oracle::integrate(
      [&](double r) { return r > 0 ? two_pi * r * std::log(r) * w1_eval(r, w) : 0.0; }, 0.0, 1.0, {}, {0.25});
  EXPECT_NEAR(s.evaluate(Vec2{}, density_one()), ref.value, 1e-9);
}

TEST(NearField, PlanInvariants) {
  for (Vec2 x : {smooth_inside, smooth_cut, corner_pt}) {
    NearFieldSolver s(teardrop(), {40, 24, {}, true});
    NearFieldPlan p = s.plan(x);
    EXPECT_EQ(p.window_case, classify_window_case(x, 1.0, teardrop()));
    ASSERT_EQ(p.theta.size(), 48u);
    ASSERT_EQ(p.cut_plus.size(), p.theta.size());
    double h = p.theta[1] - p.theta[0];
    for (std::size_t i = 1; i < p.theta.size(); ++i) EXPECT_NEAR(p.theta[i] - p.theta[i - 1], h, 1e-14);
    bool corner = p.window_case == WindowCase::CornerIntersection;
    EXPECT_NEAR(h, (corner ? two_pi : pi) / 48, 1e-14);
    EXPECT_NEAR(p.theta.front(), corner ? -pi : 0.0, 1e-15);
    EXPECT_EQ(p.corrected, corner);
    EXPECT_EQ(p.fan.has_value(), corner);
    for (double c : p.cut_plus) {
      EXPECT_GT(c, 0.0);
      EXPECT_LE(c, 1.0);
    }
    for (double c : p.cut_minus) {
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
    }
    if (p.window_case == WindowCase::FullyInside) {
      for (double c : p.cut_plus) EXPECT_EQ(c, 1.0);
    }
  }
}

// Samples with |r| below the cut lie in the domain.
TEST(NearField, RadialSamplesInsideDomain) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Vec2 x : {smooth_inside, smooth_cut}) {
    NearFieldSolver s(teardrop(), {64, 64, {}, true});
    NearFieldPlan p = s.plan(x);
    for (int k = 0; k < 2000; ++k) {
      std::size_t i = static_cast<std::size_t>(u(rng) * p.theta.size());
      Vec2 e = unit(p.theta[i]);
      double r = u(rng) * p.cut_plus[i] * (1 - 1e-9);
      EXPECT_NE(teardrop().locate(x + e * r), Location::Outside);
      double rm = u(rng) * p.cut_minus[i] * (1 - 1e-9);
      EXPECT_NE(teardrop().locate(x - e * rm), Location::Outside);
    }
  }
  // corner case, uncorrected plan: cut_plus is the first exit
  NearFieldSolver s(teardrop(), {64, 64, {}, false});
  NearFieldPlan p = s.plan(corner_pt);
  for (int k = 0; k < 2000; ++k) {
    std::size_t i = static_cast<std::size_t>(u(rng) * p.theta.size());
    double r = u(rng) * p.cut_plus[i] * (1 - 1e-9);
    EXPECT_NE(teardrop().locate(corner_pt + unit(p.theta[i]) * r), Location::Outside);
  }
}

// Red and blue cuts are continuous in theta: adjacent differences shrink
// with the angular step.
TEST(NearField, CornerCutsContinuous) {
  auto max_jump = [](const std::vector<double>& v) {
    double j = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) j = std::max(j, std::fabs(v[i + 1] - v[i]));
    return std::max(j, std::fabs(v.front() - v.back()));
  };
  NearFieldSolver a(teardrop(), {32, 128, {}, true}), b(teardrop(), {32, 1024, {}, true});
  NearFieldPlan pa = a.plan(corner_pt), pb = b.plan(corner_pt);
  ASSERT_TRUE(pa.corrected);
  EXPECT_LT(max_jump(pb.cut_plus), 0.6 * max_jump(pa.cut_plus));
  EXPECT_LT(max_jump(pb.cut_minus), 0.6 * max_jump(pa.cut_minus));
  EXPECT_LT(max_jump(pb.cut_plus), 0.05);
  EXPECT_LT(max_jump(pb.cut_minus), 0.05);
  for (double c : pb.chi) {
    EXPECT_GT(c, -0.2);
    EXPECT_LT(c, 1.2);
  }
}

TEST(NearField, BoxCoefficientsAnalytic) {
  const double t2 = -0.7, t0 = 1.9;
  FourierCoeffs1D c = box_coeffs(t2, t0 - t2, 16);
  EXPECT_NEAR(c[0].real(), (t0 - t2) / two_pi, 1e-15);
  for (int n = 1; n <= 16; ++n) {
    cplx want = (std::polar(1.0, -n * t2) - std::polar(1.0, -n * t0)) / cplx(0, two_pi * n);
    EXPECT_NEAR(std::abs(c[n] - want), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[-n] - std::conj(want)), 0.0, 1e-15);
  }
  // a box that wraps through pi equals the complement of the gap
  FourierCoeffs1D w = box_coeffs(2.8, 1.5, 8), g = box_coeffs(2.8 + 1.5 - two_pi, two_pi - 1.5, 8);
  EXPECT_NEAR(std::abs(w[0] + g[0] - 1.0), 0.0, 1e-15);
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(std::abs(w[n] + g[n]), 0.0, 1e-15);
}

TEST(NearField, LinearInDensity) {
  Density a = density_poly_exp(), b{"s", [](Vec2 y) { return std::sin(y.x) * y.y + 2.0; }};
  Density c{"c", [&](Vec2 y) { return 2.5 * a(y) - 0.5 * b(y); }};
  for (Vec2 x : {smooth_inside, smooth_cut, corner_pt}) {
    double lhs = solve(x, 32, true, c), rhs = 2.5 * solve(x, 32, true, a) - 0.5 * solve(x, 32, true, b);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::fabs(lhs)));
  }
}

// Cases 1 and 2 against the polar oracle: order >= 4 for F >= 32.
TEST(NearField, SmoothCasesConvergeToOracle) {
  for (Vec2 x : {smooth_inside, smooth_cut}) {
    double ref = oracle_I1(x);
    double e32 = std::fabs(solve(x, 32) - ref), e64 = std::fabs(solve(x, 64) - ref),
           e128 = std::fabs(solve(x, 128) - ref);
    EXPECT_GE(std::log2(e32 / e64), 4.0) << x.x << "," << x.y;
    EXPECT_TRUE(std::log2(e64 / e128) >= 4.0 || e128 < 1e-12) << e64 << " -> " << e128;
    EXPECT_LT(e128, 1e-9);
  }
}

TEST(NearField, CornerCaseConvergesToOracle) {
  double ref = oracle_I1(corner_pt);
  double e64 = std::fabs(solve(corner_pt, 64) - ref), e128 = std::fabs(solve(corner_pt, 128) - ref);
  EXPECT_LT(e128, e64);
  EXPECT_LT(e128, 1e-6);
  double u128 = std::fabs(solve(corner_pt, 128, false) - ref);
  EXPECT_LT(u128, 1e-5);
}

TEST(NearField, UnfilteredBaselineIsWorse) {
  NearFieldSolver s(teardrop(), {32, 32, {}, true});
  NearFieldPlan p = s.plan(smooth_cut);
  double ref = oracle_I1(smooth_cut);
  Density phi = density_poly_exp();
  EXPECT_GT(std::fabs(s.evaluate_unfiltered(p, phi) - ref), 10 * std::fabs(s.evaluate(p, phi) - ref));
}

// Just outside and just inside the corner-case boundary both match the oracle.
TEST(NearField, CaseBoundaryContinuity) {
  const Vec2 dir = unit(-0.3);
  for (double rho : {0.98, 1.02}) {
    Vec2 x = dir * rho;
    ASSERT_EQ(teardrop().locate(x), Location::Inside);
    WindowCase c = classify_window_case(x, 1.0, teardrop());
    EXPECT_EQ(c == WindowCase::CornerIntersection, rho < 1.0);
    EXPECT_NEAR(solve(x, 128), oracle_I1(x), 1e-6) << rho;
  }
}

TEST(NearField, OutsidePointRejected) {
  NearFieldSolver s(teardrop(), {16, 16, {}, true});
  EXPECT_THROW(s.plan({-1.0, 0.0}), GeometryError);
}
