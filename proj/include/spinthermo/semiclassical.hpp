// Jaynesian maximum-entropy state for two constrained Pauli observables:
//   rho = exp(Omega I - lambda1 sigma1 - lambda2 sigma2),
//   Omega = -ln Tr exp(-lambda1 sigma1 - lambda2 sigma2).
// Full Pauli convention throughout (sigma_i^2 = I, <sigma_i> in [-1, 1]).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace spinthermo {

using complex = std::complex<double>;

/// Dense 2x2 complex matrix, row-major.
struct Matrix2c {
  std::array<complex, 4> m{};

  complex& operator()(int r, int c) { return m[2 * r + c]; }
  const complex& operator()(int r, int c) const { return m[2 * r + c]; }

  static Matrix2c identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

  friend Matrix2c operator+(const Matrix2c& a, const Matrix2c& b) {
    Matrix2c r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
  }
  friend Matrix2c operator-(const Matrix2c& a, const Matrix2c& b) {
    Matrix2c r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
  }
  friend Matrix2c operator*(complex s, const Matrix2c& a) {
    Matrix2c r;
    for (int i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
    return r;
  }
  friend Matrix2c operator*(const Matrix2c& a, const Matrix2c& b) {
    Matrix2c r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
  }

  complex trace() const { return m[0] + m[3]; }
  Matrix2c adjoint() const { return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}}; }
  double max_abs_diff(const Matrix2c& o) const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
    return d;
  }
};

enum class Pauli { sigma1, sigma2, sigma3 };

inline Matrix2c pauli_matrix(Pauli p) {
  using namespace std::complex_literals;
  switch (p) {
    case Pauli::sigma1: return {{0.0, 1.0, 1.0, 0.0}};
    case Pauli::sigma2: return {{0.0, -1.0i, 1.0i, 0.0}};
    case Pauli::sigma3: return {{1.0, 0.0, 0.0, -1.0}};
  }
  throw std::logic_error("unknown Pauli label");
}

struct LagrangeMultipliers {
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  LagrangeMultipliers() = default;
  LagrangeMultipliers(double l1, double l2) : lambda1(l1), lambda2(l2) {
    if (!std::isfinite(l1) || !std::isfinite(l2))
      throw std::domain_error("LagrangeMultipliers: multipliers must be finite");
  }

  double norm() const { return std::hypot(lambda1, lambda2); }
};

/// A 2x2 density matrix; Hermitian, unit trace, positive semidefinite.
struct DensityMatrix2 {
  Matrix2c matrix;

  double expectation(Pauli p) const { return (matrix * pauli_matrix(p)).trace().real(); }
  double expectation(const Matrix2c& op) const { return (matrix * op).trace().real(); }
  double purity() const { return (matrix * matrix).trace().real(); }
  std::pair<double, double> eigenvalues() const {
    // Hermitian: lambda = tr/2 +- sqrt((a-d)^2/4 + |b|^2)
    const double a = matrix(0, 0).real();
    const double d = matrix(1, 1).real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(matrix(0, 1)));
    const double c = 0.5 * (a + d);
    return {c - half_gap, c + half_gap};
  }
};

struct SemiclassicalMoments {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double var1 = 1.0;
  double var2 = 1.0;
  double cov = 0.0;
};

namespace semiclassical {

/// Omega = -ln(2 cosh lambda), lambda = |(lambda1, lambda2)|.
inline double omega(const LagrangeMultipliers& lams) {
  const double l = lams.norm();
  // 2 cosh l = e^l (1 + e^{-2l})
  return -(l + std::log1p(std::exp(-2.0 * l)));
}

/// <sigma_i> = -lambda_i tanh(lambda) / lambda, (0, 0) at lambda = 0.
inline std::pair<double, double> mean(const LagrangeMultipliers& lams) {
  const double l = lams.norm();
  if (l == 0.0) return {0.0, 0.0};
  const double s = std::tanh(l) / l;
  return {-lams.lambda1 * s, -lams.lambda2 * s};
}

/// Closed form through the eigen-decomposition of lambda.sigma:
/// eigenvalues e^{-+lambda} / (2 cosh lambda), i.e. rho = (I + m.sigma) / 2.
inline DensityMatrix2 density_matrix(const LagrangeMultipliers& lams) {
  const auto [m1, m2] = mean(lams);
  using namespace std::complex_literals;
  DensityMatrix2 rho;
  rho.matrix = {{0.5, 0.5 * (m1 - 1.0i * m2), 0.5 * (m1 + 1.0i * m2), 0.5}};
  return rho;
}

/// Quantum variances Tr(rho s_i^2) - Tr(rho s_i)^2 and the symmetrised
/// covariance Tr(rho {s1, s2})/2 - Tr(rho s1) Tr(rho s2).
inline SemiclassicalMoments moments(const LagrangeMultipliers& lams) {
  const DensityMatrix2 rho = density_matrix(lams);
  const Matrix2c s1 = pauli_matrix(Pauli::sigma1);
  const Matrix2c s2 = pauli_matrix(Pauli::sigma2);
  SemiclassicalMoments out;
  out.mean1 = rho.expectation(s1);
  out.mean2 = rho.expectation(s2);
  out.var1 = rho.expectation(s1 * s1) - out.mean1 * out.mean1;
  out.var2 = rho.expectation(s2 * s2) - out.mean2 * out.mean2;
  out.cov = 0.5 * rho.expectation(s1 * s2 + s2 * s1) - out.mean1 * out.mean2;
  return out;
}

/// Inverse of mean(): lambda = artanh(m), lambda_i = -target_i lambda / m.
inline LagrangeMultipliers fit(double target1, double target2) {
  if (!std::isfinite(target1) || !std::isfinite(target2))
    throw std::domain_error("semiclassical::fit: targets must be finite");
  const double m = std::hypot(target1, target2);
  if (m >= 1.0) throw std::domain_error("semiclassical::fit: targets must lie inside the unit disk");
  if (m == 0.0) return {0.0, 0.0};
  const double l = std::atanh(m);
  return {-target1 * l / m, -target2 * l / m};
}

}  // namespace semiclassical
}  // namespace spinthermo
