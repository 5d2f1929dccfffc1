#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "spinthermo/oracles.hpp"
#include "spinthermo/specfun.hpp"

using namespace spinthermo;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST(BesselOrder, ValidatesRange) {
  EXPECT_EQ(BesselOrder(1, 2).twice(), 1);
  EXPECT_EQ(BesselOrder(-1, 2).twice(), -1);
  EXPECT_TRUE(BesselOrder(5, 2).is_half_integer());
  EXPECT_FALSE(BesselOrder(3).is_half_integer());
  EXPECT_EQ(BesselOrder(2).minus_one().twice(), 2);
  EXPECT_THROW(BesselOrder(1, 3), std::domain_error);
  EXPECT_THROW(BesselOrder(-1), std::domain_error);
  EXPECT_THROW(BesselOrder(11), std::domain_error);
  EXPECT_THROW(ModelDimension(0), std::domain_error);
  EXPECT_THROW(ModelDimension(21), std::domain_error);
}

TEST(BesselI, ValuesAtZero) {
  EXPECT_EQ(bessel_i(BesselOrder(0), 0.0), 1.0);
  EXPECT_EQ(bessel_i(BesselOrder(1), 0.0), 0.0);
  EXPECT_EQ(bessel_i_scaled(BesselOrder(0), 0.0), 1.0);
  EXPECT_THROW(bessel_i_scaled(BesselOrder(-1, 2), 0.0), std::domain_error);
  EXPECT_THROW(bessel_i(BesselOrder(0), -1.0), std::domain_error);
}

TEST(BesselI, MatchesExtendedPrecisionSeries) {
  EXPECT_NEAR(bessel_i(BesselOrder(1), 1.0), static_cast<double>(oracles::bessel_i_power_series(1, 1.0L)), 1e-12);
  for (int tw = 0; tw <= 12; ++tw)
    for (double x : {0.01, 0.3, 1.0, 4.0, 9.0}) {
      const double nu = tw / 2.0;
      const double ref = static_cast<double>(oracles::bessel_i_power_series(nu, x, 80));
      EXPECT_LT(rel(bessel_i(BesselOrder::from_twice(tw), x), ref), 1e-13) << "nu=" << nu << " x=" << x;
    }
}

TEST(BesselI, ScaledMatchesUnscaledAtOverlap) {
  EXPECT_LT(rel(bessel_i_scaled(BesselOrder(1), 30.0), bessel_i(BesselOrder(1), 30.0) * std::exp(-30.0)), 1e-10);
  for (int tw = -1; tw <= 20; ++tw)
    for (double x : {0.7, 12.0, 29.5, 30.5, 60.0, 250.0, 700.0}) {
      const BesselOrder nu = BesselOrder::from_twice(tw);
      EXPECT_LT(rel(bessel_i(nu, x), bessel_i_scaled(nu, x) * std::exp(x)), 1e-10) << tw << " " << x;
    }
}

TEST(BesselI, LargeArgumentMatchesDebyeExpansion) {
  EXPECT_LT(rel(bessel_i_scaled(BesselOrder(2), 1000.0), oracles::bessel_i_debye_scaled(2.0, 1000.0)), 1e-8);
  EXPECT_LT(rel(bessel_i_scaled(BesselOrder(7, 2), 400.0), oracles::bessel_i_debye_scaled(3.5, 400.0)), 1e-8);
}

TEST(BesselI, HalfOrdersAreElementary) {
  const double pi = std::numbers::pi;
  for (double x : {0.05, 1.0, 7.0, 40.0}) {
    EXPECT_LT(rel(bessel_i(BesselOrder(1, 2), x), std::sqrt(2 / (pi * x)) * std::sinh(x)), 1e-14);
    EXPECT_LT(rel(bessel_i(BesselOrder(-1, 2), x), std::sqrt(2 / (pi * x)) * std::cosh(x)), 1e-14);
    const double i32 = std::sqrt(2 / (pi * x)) * (std::cosh(x) - std::sinh(x) / x);
    EXPECT_LT(rel(bessel_i(BesselOrder(3, 2), x), i32), 1e-12) << x;
  }
}

TEST(BesselI, OverflowIsReported) {
  EXPECT_THROW(bessel_i(BesselOrder(0), 800.0), std::overflow_error);
  EXPECT_TRUE(std::isfinite(bessel_i_scaled(BesselOrder(0), 800.0)));
}

TEST(BesselI, RecurrenceHolds) {
  for (int tw = 1; tw <= 16; ++tw)
    for (double x : {0.1, 0.9, 3.0, 11.0, 17.0, 30.0}) {
      const BesselOrder nu = BesselOrder::from_twice(tw);
      const double lo = bessel_i(nu.minus_one(), x);
      const double hi = bessel_i(BesselOrder::from_twice(tw + 2), x);
      EXPECT_LE(std::abs(lo - hi - 2 * nu.value() / x * bessel_i(nu, x)), 1e-11 * lo);
    }
}

TEST(BesselRatio, HalfOrderIsTanh) {
  EXPECT_NEAR(bessel_ratio(BesselOrder(1, 2), 2.0), std::tanh(2.0), 1e-13);
  for (double b : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 150.0})
    EXPECT_NEAR(bessel_ratio(BesselOrder(1, 2), b), std::tanh(b), 1e-12);
}

TEST(BesselRatio, SmallArgumentLeadingTerm) {
  EXPECT_LT(rel(bessel_ratio(BesselOrder(2), 1e-4), 2.5e-5), 1e-6);
}

TEST(BesselRatio, FigureCaptionGap) {
  EXPECT_NEAR(std::tanh(1.45489) - bessel_ratio(BesselOrder(2), 1.45489), 0.561292, 1e-4);
}

TEST(BesselRatio, AgreesWithQuotientOfValues) {
  for (int tw = 1; tw <= 20; ++tw)
    for (double x : {0.2, 5.0, 50.0, 99.0, 101.0, 500.0}) {
      const BesselOrder nu = BesselOrder::from_twice(tw);
      EXPECT_LT(rel(bessel_ratio(nu, x), bessel_i_scaled(nu, x) / bessel_i_scaled(nu.minus_one(), x)), 1e-12)
          << tw << " " << x;
    }
}

TEST(BesselRatio, Domain) {
  EXPECT_THROW(bessel_ratio(BesselOrder(0), 1.0), std::domain_error);
  EXPECT_THROW(bessel_ratio(BesselOrder(1), 0.0), std::domain_error);
}

TEST(BesselJ0, Values) {
  EXPECT_EQ(bessel_j0(0.0), 1.0);
  EXPECT_NEAR(bessel_j0(2.404825557695773), 0.0, 1e-9);
  EXPECT_NEAR(bessel_j0(1.0), static_cast<double>(oracles::bessel_j0_power_series(1.0L)), 1e-12);
  const double root = oracles::bisect([](double x) { return static_cast<double>(oracles::bessel_j0_power_series(x)); }, 2.0, 3.0);
  EXPECT_NEAR(bessel_j0(root), 0.0, 1e-12);
  for (double x : {3.0, 8.0, 11.5}) EXPECT_NEAR(bessel_j0(x), static_cast<double>(oracles::bessel_j0_power_series(x, 80)), 1e-12);
}

TEST(BesselJ0, AsymptoticBranchContinuous) {
  EXPECT_NEAR(bessel_j0(12.0), bessel_j0(std::nextafter(12.0, 13.0)), 1e-12);
  // leading Hankel term at a large argument
  const double x = 500.0;
  EXPECT_NEAR(bessel_j0(x), std::sqrt(2 / (std::numbers::pi * x)) * std::cos(x - std::numbers::pi / 4), 1e-5);
}

TEST(Magnetization, NamedLaws) {
  EXPECT_NEAR(magnetization(ModelDimension(1), 3.0), std::tanh(3.0), 1e-13);
  EXPECT_NEAR(magnetization(ModelDimension(3), 2.0), 1 / std::tanh(2.0) - 0.5, 1e-12);
  EXPECT_EQ(magnetization(ModelDimension(4), 0.0), 0.0);
  EXPECT_NEAR(langevin(0.7), 1 / std::tanh(0.7) - 1 / 0.7, 1e-12);
  EXPECT_EQ(brillouin(1.0), std::tanh(1.0));
  EXPECT_NEAR(bures_alternative(2.0), bessel_i(BesselOrder(2), 2.0) / bessel_i(BesselOrder(1), 2.0), 1e-14);
}

TEST(Magnetization, OddExtension) {
  for (int d : {1, 3, 4, 6})
    for (double b : {0.3, 1.45489, 9.0}) EXPECT_EQ(magnetization(ModelDimension(d), -b), -magnetization(ModelDimension(d), b));
}

TEST(Magnetization, MonotoneBoundedOrdered) {
  for (int d : {1, 3, 4, 6}) {
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double b = 30.0 * i / 1000.0;
      const double v = magnetization(ModelDimension(d), b);
      EXPECT_GE(v, prev);
      if (1.0 - v > 1e-14) EXPECT_GT(v, prev) << d << " " << b;
      EXPECT_GT(magnetization_slope(ModelDimension(d), b), 0.0);
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
      prev = v;
    }
  }
  for (int i = 1; i <= 400; ++i) {
    const double b = 10.0 * i / 400.0;
    EXPECT_LT(magnetization(ModelDimension(1), b), 1.0);
    EXPECT_GT(magnetization(ModelDimension(1), b), magnetization(ModelDimension(3), b));
    EXPECT_GT(magnetization(ModelDimension(3), b), magnetization(ModelDimension(4), b));
    EXPECT_GT(magnetization(ModelDimension(4), b), magnetization(ModelDimension(6), b));
  }
}

TEST(MagnetizationSlope, Values) {
  const double s = 1 / std::cosh(1.0);
  EXPECT_NEAR(magnetization_slope(ModelDimension(1), 1.0), s * s, 1e-14);
  EXPECT_EQ(magnetization_slope(ModelDimension(4), 0.0), 0.25);
  EXPECT_NEAR(magnetization_slope(ModelDimension(3), 0.0), 1.0 / 3.0, 1e-15);
  // continuity into the origin
  EXPECT_NEAR(magnetization_slope(ModelDimension(4), 1e-6), 0.25, 1e-9);
}

TEST(MagnetizationSlope, MatchesFiniteDifference) {
  const double h = 1e-5;
  for (int d : {1, 2, 3, 4, 6, 10})
    for (double b : {0.2, 1.0, 3.0, 12.0}) {
      const ModelDimension dim(d);
      const double fd = (magnetization(dim, b + h) - magnetization(dim, b - h)) / (2 * h);
      EXPECT_NEAR(magnetization_slope(dim, b), fd, 1e-9) << d << " " << b;
    }
}

TEST(HeatCapacity, LowTemperatureLimits) {
  const ModelDimension four(4);
  EXPECT_EQ(heat_capacity(four, 0.0), 0.0);
  const double c50 = heat_capacity(four, 50), c100 = heat_capacity(four, 100), c200 = heat_capacity(four, 200);
  EXPECT_LT(std::abs(c50 / 1.5 - 1), 0.02);
  EXPECT_LT(std::abs(c100 - 1.5), std::abs(c50 - 1.5));
  EXPECT_LT(std::abs(c200 - 1.5), std::abs(c100 - 1.5));
  EXPECT_LT(heat_capacity(ModelDimension(1), 10.0), 1e-3);
  EXPECT_THROW(heat_capacity(four, -1.0), std::domain_error);
}
