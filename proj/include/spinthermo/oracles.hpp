// Reference implementations used only for verification (unit tests, the
// acceptance suite and `spinthermo selftest`). Each takes a route that is
// independent of the production code it checks: extended-precision power
// series, Debye asymptotics, a brute-force matrix exponential, Monte Carlo.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spinthermo/semiclassical.hpp"

namespace spinthermo::oracles {

/// sum_{k < terms} (x/2)^{2k+nu} / (k! Gamma(k+nu+1)) in long double.
inline long double bessel_i_power_series(double nu, long double x, int terms = 50) {
  const long double half = x / 2.0L;
  long double term = std::pow(half, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1.0L);
  long double sum = term;
  for (int k = 1; k < terms; ++k) {
    term *= half * half / (static_cast<long double>(k) * (k + nu));
    sum += term;
  }
  return sum;
}

/// sum_{k < terms} (-1)^k (x/2)^{2k} / (k!)^2 in long double.
inline long double bessel_j0_power_series(long double x, int terms = 40) {
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < terms; ++k) {
    term *= -(x * x / 4.0L) / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

/// e^{-x} I_nu(x) from the Debye uniform asymptotic expansion in 1/nu
/// (terms u_0 .. u_4), written at argument x = nu z.
inline double bessel_i_debye_scaled(double nu, double x) {
  const double z = x / nu;
  const double s = std::sqrt(1.0 + z * z);
  const double t = 1.0 / s;
  // nu*eta - x = nu (s - z) + nu ln(z / (1 + s))
  const double expo = nu / (s + z) - nu * std::log1p((1.0 + 1.0 / (s + z)) / z);
  const double t2 = t * t;
  const double u1 = (3.0 * t - 5.0 * t * t2) / 24.0;
  const double u2 = (81.0 * t2 - 462.0 * t2 * t2 + 385.0 * t2 * t2 * t2) / 1152.0;
  const double u3 = t * t2 * (30375.0 - 369603.0 * t2 + 765765.0 * t2 * t2 - 425425.0 * t2 * t2 * t2) / 414720.0;
  const double u4 = t2 * t2 *
                    (4465125.0 - 94121676.0 * t2 + 349922430.0 * t2 * t2 - 446185740.0 * t2 * t2 * t2 +
                     185910725.0 * t2 * t2 * t2 * t2) /
                    39813120.0;
  const double series = 1.0 + u1 / nu + u2 / (nu * nu) + u3 / (nu * nu * nu) + u4 / (nu * nu * nu * nu);
  return std::exp(expo) / (std::sqrt(2.0 * std::numbers::pi * nu) * std::sqrt(s)) * series;
}

/// Root of a sign-changing function on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// exp(A) by scaling and squaring with a 30-term Taylor series.
inline Matrix2c expm(const Matrix2c& a) {
  double norm = 0.0;
  for (const auto& v : a.m) norm = std::max(norm, std::abs(v));
  int squarings = 0;
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix2c scaled = complex(std::ldexp(1.0, -squarings)) * a;
  Matrix2c term = Matrix2c::identity();
  Matrix2c sum = Matrix2c::identity();
  for (int k = 1; k <= 30; ++k) {
    term = complex(1.0 / k) * (term * scaled);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// rho = exp(-l1 s1 - l2 s2) / Tr(...) from the brute-force exponential.
inline Matrix2c maxent_state(double lambda1, double lambda2) {
  const Matrix2c h = complex(-lambda1) * pauli_matrix(Pauli::sigma1) + complex(-lambda2) * pauli_matrix(Pauli::sigma2);
  const Matrix2c e = expm(h);
  return complex(1.0 / e.trace().real()) * e;
}

struct MonteCarloEstimate {
  double value;
  double standard_error;
};

/// Variance of x for the uniform distribution on the unit disk.
inline MonteCarloEstimate uniform_disk_variance(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double s1 = 0, s2 = 0, s4 = 0;
  std::size_t n = 0;
  while (n < samples) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y > 1.0) continue;
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
    ++n;
  }
  const double m1 = s1 / n, m2 = s2 / n, m4 = s4 / n;
  return {m2 - m1 * m1, std::sqrt((m4 - m2 * m2) / n)};
}

/// Boltzmann-weighted mean of s under the Bures ball density, sampling the
/// uniform 3-sphere in four dimensions and projecting out one coordinate.
inline std::array<MonteCarloEstimate, 3> bures_ball_mean(const std::array<double, 3>& beta, std::size_t samples,
                                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double wsum = 0, w2sum = 0;
  std::array<double, 3> ws{}, ws2{}, w2s{};
  for (std::size_t n = 0; n < samples; ++n) {
    double v[4] = {g(rng), g(rng), g(rng), g(rng)};
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    for (double& c : v) c /= r;
    const double w = std::exp(-beta[0] * v[0] - beta[1] * v[1] - beta[2] * v[2]);
    wsum += w;
    w2sum += w * w;
    for (int i = 0; i < 3; ++i) {
      ws[i] += w * v[i];
      ws2[i] += w * w * v[i] * v[i];
      w2s[i] += w * w * v[i];
    }
  }
  std::array<MonteCarloEstimate, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double mean = ws[i] / wsum;
    // delta-method variance of the self-normalised ratio estimator
    const double var = (ws2[i] - 2.0 * mean * w2s[i] + mean * mean * w2sum) / (wsum * wsum);
    out[i] = {mean, std::sqrt(std::max(0.0, var))};
  }
  return out;
}

struct ClosedFormCase {
  std::string name;
  std::function<double(double)> f;
  double a;
  double b;
  double exact;
};

/// Twenty one-dimensional integrals with known values, including endpoint
/// singularities and a kink.
inline std::vector<ClosedFormCase> closed_form_suite() {
  using std::numbers::pi;
  return {
      {"x^2", [](double x) { return x * x; }, 0, 1, 1.0 / 3.0},
      {"semicircle", [](double x) { return std::sqrt(std::max(0.0, 1 - x * x)); }, -1, 1, pi / 2},
      {"exp", [](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1},
      {"sin", [](double x) { return std::sin(x); }, 0, pi, 2.0},
      {"lorentz", [](double x) { return 1 / (1 + x * x); }, 0, 1, pi / 4},
      {"sqrt", [](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0},
      {"log", [](double x) { return std::log(x); }, 0, 1, -1.0},
      {"inv_sqrt", [](double x) { return 1 / std::sqrt(x); }, 0, 1, 2.0},
      {"cos10", [](double x) { return std::cos(10 * x); }, 0, 1, std::sin(10.0) / 10},
      {"gauss", [](double x) { return std::exp(-x * x); }, -3, 3, std::sqrt(pi) * std::erf(3.0)},
      {"inv", [](double x) { return 1 / x; }, 1, std::exp(1.0), 1.0},
      {"poly5", [](double x) { return std::pow(x, 5) - 3 * x * x; }, -2, 3, 665.0 / 6.0 - 35.0},
      {"kink", [](double x) { return std::abs(x - 0.3); }, 0, 1, 0.29},
      {"runge", [](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0)},
      {"sin2", [](double x) { return std::sin(x) * std::sin(x); }, 0, 2 * pi, pi},
      {"peak", [](double x) { return std::exp(-50 * (x - 0.5) * (x - 0.5)); }, 0, 1,
       std::sqrt(pi / 50) * std::erf(0.5 * std::sqrt(50.0))},
      {"xexp", [](double x) { return x * std::exp(-x); }, 0, 10, 1 - 11 * std::exp(-10.0)},
      {"cosh", [](double x) { return std::cosh(x); }, -2, 2, 2 * std::sinh(2.0)},
      {"arcsine", [](double x) { return 1 / std::sqrt(x * (2 - x)); }, 0, 1, pi / 2},
      {"x^1.5", [](double x) { return std::pow(x, 1.5); }, 0, 4, 12.8},
  };
}

}  // namespace spinthermo::oracles
