// Quantum-theoretic (Bures-metric) thermodynamics of a spin-1/2.
//
// Two observables: the Bures volume element 1/(8 sqrt(1-|s|^2)) integrated
// over <sigma3> leaves the uniform density pi/8 on the unit disk, which is
// tilted by exp(-beta1 s1 - beta2 s2). Three observables: the tilt is
// applied to the Bures element on the ball itself.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "spinthermo/quadrature.hpp"
#include "spinthermo/specfun.hpp"

namespace spinthermo {

struct InverseTemps2 {
  static constexpr double kMaxMagnitude = 50.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  InverseTemps2() = default;
  InverseTemps2(double b1, double b2) : beta1(b1), beta2(b2) {
    if (!std::isfinite(b1) || !std::isfinite(b2) || std::abs(b1) > kMaxMagnitude || std::abs(b2) > kMaxMagnitude)
      throw std::domain_error("InverseTemps2: components must be finite with magnitude <= 50");
  }
  double norm() const { return std::hypot(beta1, beta2); }
};

struct InverseTemps3 {
  static constexpr double kMaxMagnitude = 10.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;

  InverseTemps3() = default;
  InverseTemps3(double b1, double b2, double b3) : beta1(b1), beta2(b2), beta3(b3) {
    for (double b : {b1, b2, b3})
      if (!std::isfinite(b) || std::abs(b) > kMaxMagnitude)
        throw std::domain_error("InverseTemps3: components must be finite with magnitude <= 10");
  }
  double norm() const { return std::sqrt(beta1 * beta1 + beta2 * beta2 + beta3 * beta3); }
};

struct BlochVector {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  BlochVector() = default;
  BlochVector(double a, double b, double c) : s1(a), s2(b), s3(c) {
    if (!(a * a + b * b + c * c <= 1.0 + 1e-12)) throw std::domain_error("BlochVector: outside the unit ball");
  }
  double norm() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

/// Boltzmann-ensemble moments of (<sigma1>, <sigma2>) under the Bures model.
struct EnsembleMoments {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double cov = 0.0;
  double partition = 0.0;
  double quadrature_error = 0.0;  // largest error estimate among the normalized moments
  bool converged = false;
};

enum class ReducedForm3 { paper, direct, full3d };

inline const char* to_string(ReducedForm3 c) {
  switch (c) {
    case ReducedForm3::paper: return "paper";
    case ReducedForm3::direct: return "direct";
    case ReducedForm3::full3d: return "full3d";
  }
  return "?";
}

namespace bures {

inline constexpr double kDiskDensity = std::numbers::pi / 8.0;

namespace detail {

// Below this |beta2| the marginal uses its even Taylor expansion in beta2.
inline constexpr double kSmallBeta = 1e-6;

inline void require_in_disk(double x, double y, const char* who) {
  if (!(x * x + y * y <= 1.0 + 1e-12)) throw std::domain_error(std::string(who) + ": point outside the unit disk");
}

// m_k(u) = integral_{-1}^{1} t^k e^{-u t} dt for k = 0, 1, 2.
inline std::array<double, 3> tilted_chord_moments(double u) {
  std::array<double, 3> m{};
  if (std::abs(u) <= 2.0) {
    // sum over n of (-u)^n / n! * 2 / (k + n + 1), only k + n even survives
    double term = 1.0;  // (-u)^n / n!
    for (int n = 0; n < 60; ++n) {
      if (n > 0) term *= -u / n;
      for (int k = 0; k < 3; ++k)
        if ((k + n) % 2 == 0) m[k] += term * 2.0 / (k + n + 1);
      if (n > 4 && std::abs(term) < 1e-18) break;
    }
    return m;
  }
  const double sh = std::sinh(u);
  const double ch = std::cosh(u);
  m[0] = 2.0 * sh / u;
  m[1] = 2.0 * (sh - u * ch) / (u * u);
  m[2] = 2.0 * (sh / u - 2.0 * ch / (u * u) + 2.0 * sh / (u * u * u));
  return m;
}

}  // namespace detail

/// Density of <sigma1> after integrating the tilted uniform disk density over
/// <sigma2>: e^{-beta1 x} pi sinh(beta2 sqrt(1-x^2)) / (4 beta2).
inline double marginal_density(double x, const InverseTemps2& temps) {
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("marginal_density: require |x| <= 1");
  const double a = std::sqrt(std::max(0.0, 1.0 - x * x));
  const double tilt = std::exp(-temps.beta1 * x);
  const double b = temps.beta2;
  if (std::abs(b) < detail::kSmallBeta)
    return 0.25 * std::numbers::pi * a * tilt * (1.0 + b * b * a * a / 6.0);
  return tilt * std::numbers::pi * std::sinh(b * a) / (4.0 * b);
}

/// Z(beta1, beta2) by adaptive quadrature of the marginal over [-1, 1].
inline QuadResult partition_2(const InverseTemps2& temps, const Tolerance& tol = {}) {
  return integrate_1d([&](double x) { return marginal_density(x, temps); }, -1.0, 1.0, tol);
}

/// pi^2 I1(beta) / (4 beta); pi^2/8 at beta = 0.
inline double closed_partition_2(const InverseTemps2& temps) {
  const double b = temps.norm();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  if (b == 0.0) return pi2 / 8.0;
  return pi2 * bessel_i(1, b) / (4.0 * b);
}

/// Means, variances and covariance of (<sigma1>, <sigma2>). The y-integrals
/// are elementary; only the outer x-integrals are numerical.
inline EnsembleMoments moments_2(const InverseTemps2& temps, const Tolerance& tol = {}) {
  const double b1 = temps.beta1;
  const double b2 = temps.beta2;

  // integrand index: 0 Z, 1 x, 2 y, 3 x^2, 4 xy, 5 y^2
  auto component = [&](int which) {
    return [=](double x) {
      const double a = std::sqrt(std::max(0.0, 1.0 - x * x));
      const auto m = detail::tilted_chord_moments(b2 * a);
      const double w = kDiskDensity * std::exp(-b1 * x);
      switch (which) {
        case 0: return w * a * m[0];
        case 1: return w * x * a * m[0];
        case 2: return w * a * a * m[1];
        case 3: return w * x * x * a * m[0];
        case 4: return w * x * a * a * m[1];
        default: return w * a * a * a * m[2];
      }
    };
  };

  std::array<QuadResult, 6> r;
  for (int i = 0; i < 6; ++i) r[i] = integrate_1d(component(i), -1.0, 1.0, tol);

  const double z = r[0].value;
  EnsembleMoments out;
  out.partition = z;
  out.mean1 = r[1].value / z;
  out.mean2 = r[2].value / z;
  out.var1 = r[3].value / z - out.mean1 * out.mean1;
  out.cov = r[4].value / z - out.mean1 * out.mean2;
  out.var2 = r[5].value / z - out.mean2 * out.mean2;
  out.converged = true;
  for (int i = 0; i < 6; ++i) {
    out.converged = out.converged && r[i].converged;
    out.quadrature_error = std::max(out.quadrature_error, r[i].error_estimate / z);
  }
  return out;
}

/// -(beta_i / beta) I2(beta)/I1(beta); follows from the rotational invariance
/// of the disk integral.
inline std::pair<double, double> closed_mean_2(const InverseTemps2& temps) {
  const double b = temps.norm();
  if (b == 0.0) return {0.0, 0.0};
  const double r = bessel_ratio(2, b);
  return {-temps.beta1 / b * r, -temps.beta2 / b * r};
}

/// The reduced three-observable integrand as printed in the source
/// literature: (pi/8) e^{-beta1 x - beta2 y} J0(beta3 sqrt(x^2 + y^2)).
inline double reduced_integrand_3_paper(double x, double y, const InverseTemps3& temps) {
  detail::require_in_disk(x, y, "reduced_integrand_3_paper");
  const double r = std::sqrt(x * x + y * y);
  return kDiskDensity * std::exp(-temps.beta1 * x - temps.beta2 * y) * bessel_j0(std::abs(temps.beta3) * r);
}

/// Exact reduction over <sigma3>:
///   int e^{-beta3 z} / (8 sqrt(c^2 - z^2)) dz over |z| <= c  =  (pi/8) I0(beta3 c),
/// with c = sqrt(1 - x^2 - y^2).
inline double reduced_integrand_3_direct(double x, double y, const InverseTemps3& temps) {
  detail::require_in_disk(x, y, "reduced_integrand_3_direct");
  const double c = std::sqrt(std::max(0.0, 1.0 - x * x - y * y));
  return kDiskDensity * std::exp(-temps.beta1 * x - temps.beta2 * y) * bessel_i(0, std::abs(temps.beta3) * c);
}

inline QuadResult partition_3(const InverseTemps3& temps, const Tolerance& tol, ReducedForm3 choice) {
  switch (choice) {
    case ReducedForm3::paper:
      return integrate_disk([&](double x, double y) { return reduced_integrand_3_paper(x, y, temps); }, tol);
    case ReducedForm3::direct:
      return integrate_disk([&](double x, double y) { return reduced_integrand_3_direct(x, y, temps); }, tol);
    case ReducedForm3::full3d:
      return integrate_ball_bures(
          [&](double x, double y, double z) {
            return std::exp(-temps.beta1 * x - temps.beta2 * y - temps.beta3 * z);
          },
          tol);
  }
  throw std::logic_error("partition_3: unknown integrand choice");
}

struct Mean3Result {
  BlochVector mean;
  QuadResult partition;
  double quadrature_error = 0.0;
  bool converged = false;
};

/// Boltzmann-weighted mean Bloch vector under the Bures ball density, by
/// full three-dimensional quadrature.
inline Mean3Result mean_3(const InverseTemps3& temps, const Tolerance& tol = {}) {
  const std::array<double, 3> beta = {temps.beta1, temps.beta2, temps.beta3};
  auto weight = [&](double x, double y, double z) { return std::exp(-beta[0] * x - beta[1] * y - beta[2] * z); };

  Mean3Result out;
  out.partition = integrate_ball_bures(weight, tol);
  const double z = out.partition.value;
  std::array<double, 3> m{};
  out.converged = out.partition.converged;
  for (int i = 0; i < 3; ++i) {
    const QuadResult r = integrate_ball_bures(
        [&](double x, double y, double zc) {
          const double s[3] = {x, y, zc};
          return s[i] * weight(x, y, zc);
        },
        tol);
    m[i] = r.value / z;
    out.converged = out.converged && r.converged;
    out.quadrature_error = std::max(out.quadrature_error, r.error_estimate / z);
  }
  out.mean = BlochVector(m[0], m[1], m[2]);
  return out;
}

/// -(beta_i / beta) I2(beta)/I1(beta): the Bures ball density is the
/// projection of the uniform hemisphere in four dimensions.
inline BlochVector closed_mean_3(const InverseTemps3& temps) {
  const double b = temps.norm();
  if (b == 0.0) return {};
  const double r = bessel_ratio(2, b);
  return {-temps.beta1 / b * r, -temps.beta2 / b * r, -temps.beta3 / b * r};
}

}  // namespace bures
}  // namespace spinthermo
