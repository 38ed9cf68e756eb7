#include <gtest/gtest.h>

#include <cmath>

#include "tff/farfield.hpp"
#include "tff/oracle.hpp"
#include "tff/series.hpp"
#include "tff/special.hpp"

using namespace tff;

namespace {

// (1/2) int_{-1}^{1} |x| log|x| chi_[-a, b](x) e^{-i pi n x} dx by adaptive quadrature.
cplx two_sided_oracle(int n, double a, double b) {
  std::vector<double> br{0.0};
  for (int k = -std::abs(n); k <= std::abs(n); ++k) br.push_back(double(k) / std::max(1, std::abs(n)));
  oracle::AdaptiveOptions o;
  o.abs_tol = 1e-14;
  auto r = oracle::integrate_complex(
      [&](double x) {
        double s = std::fabs(x);
        return s > 0 ? s * std::log(s) * std::polar(1.0, -pi * n * x) : cplx(0);
      },
      -a, b, o, br);
  return r.value / 2.0;
}

}  // namespace

TEST(Series, ZeroModeClosedForm) {
  EXPECT_NEAR(xlogx_coeff(0, 1.0, 2.0).real(), -0.125, 1e-15);
  // int_0^1 t log t dt / 2 by quadrature
  auto q = oracle::integrate([](double t) { return t > 0 ? t * std::log(t) : 0.0; }, 0.0, 1.0);
  EXPECT_NEAR(xlogx_coeff(0, 1.0, 2.0).real(), q.value / 2, 1e-13);
  for (double r : {0.1, 0.35, 0.7}) {
    EXPECT_NEAR(xlogx_coeff(0, r, 2.0).real(), r * r * (2 * std::log(r) - 1) / 8, 1e-12);
    EXPECT_EQ(xlogx_coeff(0, r, 2.0).imag(), 0.0);
  }
}

TEST(Series, TinyCutGivesTinyCoefficients) {
  for (int n = -64; n <= 64; ++n) EXPECT_LE(std::abs(xlogx_coeff(n, 1e-8, 2.0)), 1e-14) << n;
}

TEST(Series, ClosedFormMatchesQuadratureOracle) {
  for (int n = 1; n <= 256; ++n) {
    cplx ref = oracle::coefficient_quadrature_oracle(n, 0.7, 2.0);
    ASSERT_NEAR(std::abs(xlogx_coeff(n, 0.7, 2.0) - ref), 0.0, 1e-10) << n;
  }
}

TEST(Series, ClosedFormAcrossCutsAndPeriods) {
  double worst = 0;
  for (double P : {2.0, 3.0})
    for (double r : {0.05, 0.1, 0.5, 0.99, 1.0})
      for (int n = -300; n <= 300; n += 7)
        worst = std::max(worst, std::abs(xlogx_coeff(n, r, P) - oracle::coefficient_quadrature_oracle(n, r, P)));
  EXPECT_LT(worst, 1e-13);
}

TEST(Series, VectorMatchesScalar) {
  FourierCoeffs1D c = xlogx_coeffs(0.55, 100);
  for (int n = -100; n <= 100; ++n) EXPECT_NEAR(std::abs(c[n] - xlogx_coeff(n, 0.55)), 0.0, 1e-15);
}

TEST(Series, RejectsNonPositiveCut) {
  EXPECT_THROW(xlogx_coeff(3, 0.0), NumericalError);
  EXPECT_THROW(radial_series_one_sided(1.5, 8), NumericalError);
  EXPECT_THROW(radial_series_two_sided(0.2, 0.0, 8), NumericalError);
}

// A jump at the cut gives 1/n decay. With r = 1 the periodic extension is
// continuous but t log t has a log-singular slope at 0, so n^2 |c_n| grows
// like log n.
TEST(Series, CoefficientTailBounds) {
  double first_cont = 0, first_jump = 0;
  for (int F : {64, 128, 256, 512, 1024, 4096}) {
    FourierCoeffs1D c1 = xlogx_coeffs(1.0, F), c7 = xlogx_coeffs(0.7, F);
    double cont = 0, jump = 0;
    for (int n = F / 2; n <= F; ++n) {
      cont = std::max(cont, double(n) * n * std::abs(c1[n]) / std::log(double(n)));
      jump = std::max(jump, double(n) * std::abs(c7[n]));
    }
    if (first_cont == 0) first_cont = cont, first_jump = jump;
    EXPECT_LT(cont, 1.05 * first_cont) << F;
    EXPECT_LT(jump, 1.05 * first_jump) << F;
  }
}

TEST(Series, EiNearZeroResidualVanishes) {
  for (double x : {1e-6, -1e-6}) {
    cplx z(0, x);
    cplx R = ei_imaginary(x) - euler_gamma - std::log(z);
    EXPECT_LE(std::abs(R), 1e-5);
  }
}

TEST(Series, EiConjugateSymmetry) {
  for (double x : {0.3, 1.0, 2.5, 17.0, 300.0}) {
    EXPECT_NEAR(std::abs(ei_imaginary(-x) - std::conj(ei_imaginary(x))), 0.0, 1e-15 * std::abs(ei_imaginary(x)) + 1e-16);
  }
}

// Si, Ci against their defining integrals.
TEST(Series, SiCiMatchIntegrals) {
  for (double x : {0.01, 0.5, 1.9, 2.0, 2.1, 5.0, 12.0, 40.0}) {
    std::vector<double> br;
    for (double t = pi; t < x; t += pi) br.push_back(t);
    auto si = oracle::integrate([](double t) { return t > 0 ? std::sin(t) / t : 1.0; }, 0.0, x, {}, br);
    auto cin = oracle::integrate([](double t) { return t > 0 ? (std::cos(t) - 1) / t : 0.0; }, 0.0, x, {}, br);
    SiCi s = sici(x);
    EXPECT_NEAR(s.si, si.value, 1e-13) << x;
    EXPECT_NEAR(s.ci, euler_gamma + std::log(x) + cin.value, 2e-13) << x;
  }
}

TEST(Series, SiCiLargeArgumentAsymptotics) {
  for (double x : {1e3, 1e5}) {
    SiCi s = sici(x);
    EXPECT_NEAR(s.si, pi / 2 - std::cos(x) / x, 2.0 / (x * x));
    EXPECT_NEAR(s.ci, std::sin(x) / x, 2.0 / (x * x));
  }
}

// The pointwise error oscillates in F; its envelope over each octave decreases.
TEST(Series, OneSidedPointValueAwayFromJump) {
  const double r = 0.6, x = r / 2;
  double prev = 1;
  for (int lo : {32, 64, 128, 256}) {
    double env = 0;
    for (int F = lo; F < 2 * lo; F += std::max(1, lo / 16)) {
      FourierCoeffs1D c = radial_series_one_sided(r, F);
      env = std::max(env, std::fabs(eval_truncated_series(c, x).real() - x * std::log(x)));
    }
    EXPECT_LT(env, prev) << lo;
    prev = env;
  }
  FourierCoeffs1D c = radial_series_one_sided(r, 256);
  EXPECT_LE(std::fabs(eval_truncated_series(c, x).real() - x * std::log(x)), 1e-3);
}

TEST(Series, OneSidedIntegralIsZeroMode) {
  for (double r : {0.2, 0.9}) {
    FourierCoeffs1D c = radial_series_one_sided(r, 16);
    EXPECT_NEAR(c[0].real() * 2.0, r * r * (2 * std::log(r) - 1) / 4, 1e-14);
    for (int n = 1; n <= 16; ++n) EXPECT_NEAR(std::abs(c[-n] - std::conj(c[n])), 0.0, 1e-15);
  }
}

// |x| log|x| is even, so equal cuts give an even real series.
TEST(Series, TwoSidedEqualCutsIsEven) {
  FourierCoeffs1D c = radial_series_two_sided(0.6, 0.6, 64);
  for (int n = 1; n <= 64; ++n) {
    EXPECT_NEAR(std::abs(c[n] - c[-n]), 0.0, 1e-16);
    EXPECT_NEAR(c[n].imag(), 0.0, 1e-16);
  }
  EXPECT_NEAR(c[0].real(), 2 * xlogx_coeff(0, 0.6).real(), 1e-16);
}

TEST(Series, TwoSidedMatchesQuadrature) {
  FourierCoeffs1D c = radial_series_two_sided(0.3, 0.8, 128);
  for (int n = -128; n <= 128; n += 3)
    ASSERT_NEAR(std::abs(c[n] - two_sided_oracle(n, 0.3, 0.8)), 0.0, 1e-10) << n;
}

TEST(Series, TwoSidedReducesToOneSided) {
  FourierCoeffs1D a = radial_series_two_sided(0.0, 0.45, 32), b = radial_series_one_sided(0.45, 32);
  for (int n = -32; n <= 32; ++n) EXPECT_NEAR(std::abs(a[n] - b[n]), 0.0, 1e-16);
  FourierCoeffs1D s = radial_series_two_sided(1e-12, 0.45, 32);
  for (int n = -32; n <= 32; ++n) EXPECT_NEAR(std::abs(s[n] - b[n]), 0.0, 1e-20);
}

class CharFun : public ::testing::Test {
 protected:
  ParamBoundary tear = make_teardrop(3, 2);
};

TEST_F(CharFun, ZeroModeIsAreaOverCell) {
  Square S = wide_square();
  CharFunCoeffs c = charfun_coeffs(tear, S, 16);
  EXPECT_NEAR(c.coeffs(0, 0).real(), 8.0 / (64 * pi * pi), 1e-10);
  EXPECT_NEAR(c.coeffs(0, 0).imag(), 0.0, 1e-15);
}

TEST_F(CharFun, HermitianAndMirrorSymmetric) {
  Square S = auto_square(tear);
  CharFunCoeffs c = charfun_coeffs(tear, S, 24);
  // coefficients use absolute coordinates, so y -> -y maps n -> -n
  for (int m = -24; m <= 24; ++m)
    for (int n = -24; n <= 24; ++n) {
      ASSERT_NEAR(std::abs(c.coeffs(-m, -n) - std::conj(c.coeffs(m, n))), 0.0, 1e-12);
      ASSERT_NEAR(std::abs(c.coeffs(m, -n) - c.coeffs(m, n)), 0.0, 1e-10) << m << "," << n;
    }
}

TEST_F(CharFun, DiskSymmetries) {
  ParamBoundary d = make_disk(1.0);
  Square S{{-4, -4}, {8, 8}};
  CharFunCoeffs c = charfun_coeffs(d, S, 16);
  for (int m = -16; m <= 16; ++m)
    for (int n = -16; n <= 16; ++n) {
      cplx v = c.coeffs(m, n);
      ASSERT_NEAR(v.imag(), 0.0, 1e-12);
      ASSERT_NEAR(std::abs(v - c.coeffs(-m, -n)), 0.0, 1e-12);
      ASSERT_NEAR(std::abs(v - c.coeffs(n, m)), 0.0, 1e-12);
    }
  // Fourier transform of the unit disk: 2 pi J1(k) / k, divided by the cell area
  for (auto [m, n] : {std::pair{1, 0}, std::pair{2, 3}, std::pair{5, 5}}) {
    double k = two_pi * std::hypot(m, n) / 8.0;
    EXPECT_NEAR(c.coeffs(m, n).real(), two_pi * std::cyl_bessel_j(1.0, k) / k / 64.0, 1e-12) << m << "," << n;
  }
}

TEST_F(CharFun, RoutesAgree) {
  Square S = auto_square(tear);
  CharFunOptions o;
  o.both_routes = true;
  CharFunCoeffs c = charfun_coeffs(tear, S, 64, o);
  double e = 0;
  for (int m = -64; m <= 64; ++m)
    for (int n = -64; n <= 64; ++n)
      if (m != 0 && n != 0) e = std::max(e, std::abs(c.coeffs(m, n) - c.alt(m, n)));
  EXPECT_LT(e, 1e-10);
}

TEST_F(CharFun, NodeCountDefault) {
  EXPECT_EQ(charfun_coeffs(tear, auto_square(tear), 8).nodes, 4096u);
  EXPECT_EQ(charfun_coeffs(tear, auto_square(tear), 512, {}).nodes >= 8192u, true);
}

// Away from the boundary the truncated series approaches the indicator.
TEST_F(CharFun, SeriesConvergesAwayFromBoundary) {
  Square S = auto_square(tear);
  std::vector<Vec2> pts;
  for (double x = -1.5; x <= 4.5; x += 0.25)
    for (double y = -2.5; y <= 2.5; y += 0.25)
      if (tear.distance({x, y}) >= 0.2) pts.push_back({x, y});
  ASSERT_GT(pts.size(), 100u);
  for (auto [F, bound] : {std::pair{64, 0.05}, std::pair{256, 0.01}}) {
    CharFunCoeffs c = charfun_coeffs(tear, S, F);
    double dev = 0;
    for (Vec2 p : pts) {
      double want = tear.locate(p) == Location::Inside ? 1.0 : 0.0;
      dev = std::max(dev, std::fabs(eval_truncated_series(c.coeffs, p).real() - want));
    }
    EXPECT_LE(dev, bound) << "F = " << F;
  }
}

TEST_F(CharFun, BoundaryQuadratureIntegratesLength) {
  // arc length of the unit-radius disk and of the teardrop by a fine polygon
  ParamBoundary d = make_disk(1.0);
  BoundaryQuadrature q = boundary_quadrature(d, 256);
  double L = 0;
  for (std::size_t i = 0; i < q.t.size(); ++i) L += q.w[i] * norm(d.velocity(q.t[i]));
  EXPECT_NEAR(L, two_pi, 1e-13);
  BoundaryQuadrature qt = boundary_quadrature(tear, 4096);
  double Lt = 0, Lp = 0;
  for (std::size_t i = 0; i < qt.t.size(); ++i) Lt += qt.w[i] * norm(tear.velocity(qt.t[i]));
  std::vector<Vec2> poly = tear.polygon(400000);
  for (std::size_t i = 0; i < poly.size(); ++i) Lp += norm(poly[(i + 1) % poly.size()] - poly[i]);
  EXPECT_NEAR(Lt, Lp, 1e-8);
}
