// Modified Bessel functions of the first kind for integer and half-integer
// order, Bessel J0, and the one-parameter magnetization laws built from
// ratios I_{D/2}(x) / I_{D/2-1}(x).
//
// Evaluation strategy:
//   * I_nu, x small:   power series (all terms positive, no cancellation)
//   * I_nu, x large:   scaled Hankel asymptotic series; for half-integer
//                      orders the series terminates and, together with the
//                      e^{-2x} companion term, is the exact sinh/cosh form
//   * I_{+-1/2}:       sinh/cosh closed forms everywhere
//   * ratios:          Gauss continued fraction (modified Lentz) for
//                      x <= 100, quotient of scaled asymptotics above
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinthermo {

/// Order of a Bessel function restricted to integers and half-integers.
/// Stored as twice the order so that arithmetic stays exact.
class BesselOrder {
 public:
  static constexpr int kMaxTwice = 20;  // nu <= 10
  static constexpr int kMinTwice = -1;  // nu >= -1/2

  constexpr BesselOrder(int numerator, int denominator = 1) {
    if (denominator != 1 && denominator != 2)
      throw std::domain_error("BesselOrder: denominator must be 1 or 2");
    twice_ = denominator == 1 ? 2 * numerator : numerator;
    if (twice_ < kMinTwice || twice_ > kMaxTwice)
      throw std::domain_error("BesselOrder: order outside [-1/2, 10]");
  }

  static constexpr BesselOrder from_twice(int twice) { return BesselOrder(twice, 2); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_half_integer() const { return (twice_ & 1) != 0; }

  constexpr BesselOrder minus_one() const { return from_twice(twice_ - 2); }

  friend constexpr bool operator==(BesselOrder, BesselOrder) = default;

 private:
  int twice_ = 0;
};

/// Dimension D of the D-vector magnetization family, 1 <= D <= 20.
class ModelDimension {
 public:
  static constexpr int kMax = 20;

  constexpr explicit ModelDimension(int d) : d_(d) {
    if (d < 1 || d > kMax) throw std::domain_error("ModelDimension: D must lie in [1, 20]");
  }
  constexpr int value() const { return d_; }
  constexpr BesselOrder upper_order() const { return BesselOrder::from_twice(d_); }

 private:
  int d_;
};

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline void require_nonnegative(double x, const char* who) {
  if (!(x >= 0.0)) throw std::domain_error(std::string(who) + ": argument must be >= 0");
}

// Beyond this point the scaled asymptotic series is used.
inline double asymptotic_threshold(BesselOrder nu) {
  const double v = nu.value();
  return std::max(30.0, 2.0 * v * v);
}

inline double series_i(BesselOrder order, double x) {
  const double nu = order.value();
  if (x == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
  const double q = 0.25 * x * x;
  double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (term < kEps * 0.25 * sum) break;
  }
  return sum;
}

// sqrt(2 pi x) e^{-x} I_nu(x) ~ sum_k (-1)^k a_k(nu) / x^k, stopped at the
// smallest term. Also returns the alternating-sign-free sum used by the
// half-integer closed form.
struct HankelSums {
  double alternating;
  double positive;
};

inline HankelSums hankel_sums(BesselOrder order, double x) {
  const double mu = 4.0 * order.value() * order.value();
  double term = 1.0;
  double alt = 1.0;
  double pos = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (8.0 * k * x);
    if (next == 0.0) break;  // terminating half-integer series
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    alt += (k & 1) ? -term : term;
    pos += term;
    if (std::abs(term) < kEps * 0.1 * std::abs(alt)) break;
  }
  return {alt, pos};
}

inline double asymptotic_i_scaled(BesselOrder order, double x) {
  const HankelSums s = hankel_sums(order, x);
  const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
  if (!order.is_half_integer()) return pref * s.alternating;
  // nu = n + 1/2: the companion exponential enters with sign (-1)^{n+1}
  const int n = (order.twice() - 1) / 2;
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  return pref * (s.alternating + sign * std::exp(-2.0 * x) * s.positive);
}

// Half orders +-1/2, scaled by e^{-x}.
inline double half_order_scaled(BesselOrder order, double x) {
  const double pref = std::sqrt(2.0 / (std::numbers::pi * x));
  if (order.twice() == 1) return pref * (-0.5 * std::expm1(-2.0 * x));
  return pref * 0.5 * (1.0 + std::exp(-2.0 * x));
}

inline double ratio_continued_fraction(double nu, double x) {
  // I_{nu-1}/I_nu = b_0 + 1/(b_1 + 1/(b_2 + ...)), b_k = 2(nu+k)/x
  constexpr double tiny = 1e-300;
  double f = 2.0 * nu / x;
  if (f == 0.0) f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double b = 2.0 * (nu + k) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 0.5 * kEps) return 1.0 / f;
  }
  throw std::runtime_error("bessel_ratio: continued fraction failed to converge");
}

}  // namespace detail

/// e^{-x} I_nu(x). Finite for every x >= 0 (x = 0 is a pole for nu = -1/2).
inline double bessel_i_scaled(BesselOrder order, double x) {
  detail::require_nonnegative(x, "bessel_i_scaled");
  if (order.twice() == 1 || order.twice() == -1) {
    if (x == 0.0) {
      if (order.twice() == 1) return 0.0;
      throw std::domain_error("bessel_i_scaled: I_{-1/2} has a pole at x = 0");
    }
    return detail::half_order_scaled(order, x);
  }
  if (x <= detail::asymptotic_threshold(order)) return detail::series_i(order, x) * std::exp(-x);
  return detail::asymptotic_i_scaled(order, x);
}

/// I_nu(x). Throws std::overflow_error once the result leaves double range;
/// use bessel_i_scaled for large arguments.
inline double bessel_i(BesselOrder order, double x) {
  detail::require_nonnegative(x, "bessel_i");
  if (order.twice() != 1 && order.twice() != -1 && x <= detail::asymptotic_threshold(order))
    return detail::series_i(order, x);
  const double scaled = bessel_i_scaled(order, x);
  const double value = scaled * std::exp(x);
  if (!std::isfinite(value)) throw std::overflow_error("bessel_i: result overflows, use bessel_i_scaled");
  return value;
}

/// I_nu(x) / I_{nu-1}(x) for nu >= 1/2 and x > 0.
inline double bessel_ratio(BesselOrder order, double x) {
  if (order.twice() < 1) throw std::domain_error("bessel_ratio: order must be >= 1/2");
  if (!(x > 0.0)) throw std::domain_error("bessel_ratio: argument must be > 0");
  if (x <= 100.0) return detail::ratio_continued_fraction(order.value(), x);
  return bessel_i_scaled(order, x) / bessel_i_scaled(order.minus_one(), x);
}

/// Bessel function of the first kind J0. Accurate to ~1e-13 absolute on
/// [0, 12] (long double series); Hankel asymptotics beyond.
inline double bessel_j0(double x) {
  detail::require_nonnegative(x, "bessel_j0");
  if (x <= 12.0) {
    const long double q = -0.25L * static_cast<long double>(x) * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<long double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-22L) break;
    }
    return static_cast<double>(sum);
  }
  // J0(x) = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4))
  double p = 1.0, q = 0.0, term = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (-(odd * odd)) / (8.0 * k * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? -term : term);
    } else {
      p += ((k / 2) % 2 == 0 ? term : -term);
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double phase = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(phase) + q * std::sin(phase));
}

/// -E = I_{D/2}(beta) / I_{D/2-1}(beta), extended to beta < 0 as an odd function.
/// D = 1 is tanh (Brillouin), D = 3 the Langevin function, D = 4 the Bures
/// alternative, D = 6 the quaternionic law.
inline double magnetization(ModelDimension dim, double beta) {
  if (!std::isfinite(beta)) throw std::domain_error("magnetization: beta must be finite");
  if (beta == 0.0) return 0.0;
  if (dim.value() == 1) return std::tanh(beta);
  const double r = bessel_ratio(dim.upper_order(), std::abs(beta));
  return beta < 0.0 ? -r : r;
}

/// d(magnetization)/d(beta) from R' = 1 - (D-1) R / beta - R^2; 1/D at beta = 0.
inline double magnetization_slope(ModelDimension dim, double beta) {
  if (!std::isfinite(beta)) throw std::domain_error("magnetization_slope: beta must be finite");
  const double d = dim.value();
  if (beta == 0.0) return 1.0 / d;
  const double b = std::abs(beta);
  if (dim.value() == 1) {
    const double c = std::cosh(b);
    return 1.0 / (c * c);
  }
  const double r = bessel_ratio(dim.upper_order(), b);
  return 1.0 - (d - 1.0) * r / b - r * r;
}

/// C = beta^2 dM/dbeta with T = 1/beta (k = h = 1).
inline double heat_capacity(ModelDimension dim, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::domain_error("heat_capacity: beta must be finite and >= 0");
  if (beta == 0.0) return 0.0;
  return beta * beta * magnetization_slope(dim, beta);
}

inline double brillouin(double beta) { return std::tanh(beta); }
inline double langevin(double beta) { return magnetization(ModelDimension(3), beta); }
inline double bures_alternative(double beta) { return magnetization(ModelDimension(4), beta); }

}  // namespace spinthermo
