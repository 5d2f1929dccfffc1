// Curves, surfaces and difference maps comparing the Bures model with the
// semiclassical one (lambda_i identified with beta_i), the extremum of the
// tanh - I2/I1 gap, and inverse-temperature fitting for the Bures model.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinthermo/bures_model.hpp"
#include "spinthermo/quadrature.hpp"
#include "spinthermo/semiclassical.hpp"
#include "spinthermo/specfun.hpp"

namespace spinthermo {

/// Iterative solver failure (no convergence, bracket not found).
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { bures, semiclassical, difference };
enum class Quantity { mean1, mean2, var1, var2, cov, partition };

inline std::string_view to_string(Model m) {
  switch (m) {
    case Model::bures: return "bures";
    case Model::semiclassical: return "semiclassical";
    case Model::difference: return "difference";
  }
  return "?";
}

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::mean1: return "mean1";
    case Quantity::mean2: return "mean2";
    case Quantity::var1: return "var1";
    case Quantity::var2: return "var2";
    case Quantity::cov: return "cov";
    case Quantity::partition: return "partition";
  }
  return "?";
}

inline std::optional<Model> parse_model(std::string_view s) {
  for (Model m : {Model::bures, Model::semiclassical, Model::difference})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

inline std::optional<Quantity> parse_quantity(std::string_view s) {
  for (Quantity q : {Quantity::mean1, Quantity::mean2, Quantity::var1, Quantity::var2, Quantity::cov, Quantity::partition})
    if (s == to_string(q)) return q;
  return std::nullopt;
}

struct GridSpec {
  double min1 = -5.0;
  double max1 = 5.0;
  int steps1 = 41;
  double min2 = -5.0;
  double max2 = 5.0;
  int steps2 = 41;

  void validate() const {
    if (!(min1 < max1) || !(min2 < max2)) throw std::domain_error("GridSpec: require min < max on each axis");
    if (steps1 < 2 || steps2 < 2) throw std::domain_error("GridSpec: require at least 2 steps per axis");
    if (static_cast<double>(steps1) * steps2 > 1e6) throw std::domain_error("GridSpec: more than 1e6 grid points");
    if (!std::isfinite(min1) || !std::isfinite(max1) || !std::isfinite(min2) || !std::isfinite(max2))
      throw std::domain_error("GridSpec: axis limits must be finite");
  }

  double axis1(int i) const { return min1 + (max1 - min1) * i / (steps1 - 1); }
  double axis2(int j) const { return min2 + (max2 - min2) * j / (steps2 - 1); }
  std::size_t size() const { return static_cast<std::size_t>(steps1) * static_cast<std::size_t>(steps2); }
};

/// Row-major over (beta1 index, beta2 index).
struct SurfaceGrid {
  GridSpec spec;
  Model model = Model::bures;
  Quantity quantity = Quantity::mean1;
  std::vector<double> values;
  std::vector<double> errors;          // per-point quadrature error (zero for semiclassical)
  std::vector<std::size_t> failures;   // flat indices whose quadrature did not converge

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.steps2 + j]; }
  double max_error() const {
    double e = 0.0;
    for (double v : errors) e = std::max(e, v);
    return e;
  }
};

struct CurvePoint {
  double beta;
  double brillouin;
  double alternative;
  double difference() const { return brillouin - alternative; }
};

struct ExtremumReport {
  double argmax = 0.0;
  double max_value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

namespace analysis {

inline double tanh_minus_alternative(double beta) { return std::tanh(beta) - bures_alternative(beta); }

/// (beta, tanh beta, I2(beta)/I1(beta)) for each grid value.
inline std::vector<CurvePoint> curve_difference(std::span<const double> betas) {
  std::vector<CurvePoint> out;
  out.reserve(betas.size());
  for (double b : betas) {
    if (!(std::abs(b) <= InverseTemps2::kMaxMagnitude))
      throw std::domain_error("curve_difference: |beta| must be <= 50");
    out.push_back({b, brillouin(b), bures_alternative(b)});
  }
  return out;
}

struct GoldenResult {
  double x;
  double fx;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double xtol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > xtol && it < 500) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

/// Location and size of the largest gap between the Brillouin curve and
/// the Bures alternative for beta > 0 (the gap is odd in beta).
inline ExtremumReport find_max_difference() {
  constexpr int n = 50;
  constexpr double lo = 0.1, hi = 5.0;
  const double h = (hi - lo) / (n - 1);
  int best = 0;
  double best_val = tanh_minus_alternative(lo);
  for (int i = 1; i < n; ++i) {
    const double v = tanh_minus_alternative(lo + h * i);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best == n - 1) throw numeric_error("find_max_difference: no interior maximum on the scan grid");
  ExtremumReport rep;
  rep.bracket_lo = lo + h * (best - 1);
  rep.bracket_hi = lo + h * (best + 1);
  const GoldenResult g = golden_section_maximize(tanh_minus_alternative, rep.bracket_lo, rep.bracket_hi, 1e-9);
  rep.argmax = g.x;
  rep.max_value = g.fx;
  rep.iterations = g.iterations;
  return rep;
}

struct PointValue {
  double value;
  double error;
  bool converged;
};

inline double pick(const EnsembleMoments& m, Quantity q) {
  switch (q) {
    case Quantity::mean1: return m.mean1;
    case Quantity::mean2: return m.mean2;
    case Quantity::var1: return m.var1;
    case Quantity::var2: return m.var2;
    case Quantity::cov: return m.cov;
    case Quantity::partition: return m.partition;
  }
  return 0.0;
}

inline PointValue bures_point(Quantity q, double b1, double b2, const Tolerance& tol) {
  const InverseTemps2 temps(b1, b2);
  if (q == Quantity::partition) {
    const QuadResult z = bures::partition_2(temps, tol);
    return {z.value, z.error_estimate, z.converged};
  }
  const EnsembleMoments m = bures::moments_2(temps, tol);
  return {pick(m, q), m.quadrature_error, m.converged};
}

inline double semiclassical_point(Quantity q, double l1, double l2) {
  const LagrangeMultipliers lams(l1, l2);
  if (q == Quantity::partition) return std::exp(-semiclassical::omega(lams));
  const SemiclassicalMoments m = semiclassical::moments(lams);
  switch (q) {
    case Quantity::mean1: return m.mean1;
    case Quantity::mean2: return m.mean2;
    case Quantity::var1: return m.var1;
    case Quantity::var2: return m.var2;
    case Quantity::cov: return m.cov;
    default: return 0.0;
  }
}

/// Evaluates `quantity` at every grid point. Bures points that fail to
/// converge keep their best estimate and are listed in `failures`.
inline SurfaceGrid surface(Model model, Quantity quantity, const GridSpec& spec, const Tolerance& tol = {}) {
  spec.validate();
  tol.validate();
  for (double v : {spec.min1, spec.max1, spec.min2, spec.max2})
    if (std::abs(v) > InverseTemps2::kMaxMagnitude) throw std::domain_error("surface: grid exceeds |beta| <= 50");

  SurfaceGrid g;
  g.spec = spec;
  g.model = model;
  g.quantity = quantity;
  g.values.resize(spec.size());
  g.errors.assign(spec.size(), 0.0);
  for (int i = 0; i < spec.steps1; ++i) {
    for (int j = 0; j < spec.steps2; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * spec.steps2 + j;
      const double b1 = spec.axis1(i);
      const double b2 = spec.axis2(j);
      double v = 0.0;
      if (model != Model::semiclassical) {
        const PointValue p = bures_point(quantity, b1, b2, tol);
        v = p.value;
        g.errors[k] = p.error;
        if (!p.converged) g.failures.push_back(k);
      }
      if (model == Model::semiclassical) v = semiclassical_point(quantity, b1, b2);
      if (model == Model::difference) v -= semiclassical_point(quantity, b1, b2);
      g.values[k] = v;
    }
  }
  return g;
}

/// Bures surface minus semiclassical surface on the same grid.
inline SurfaceGrid difference_surface(Quantity quantity, const GridSpec& spec, const Tolerance& tol = {}) {
  return surface(Model::difference, quantity, spec, tol);
}

/// Solves I2(b)/I1(b) = m for b in [0, 50] by bisection.
inline double invert_alternative(double m) {
  if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("invert_alternative: require 0 <= m < 1");
  if (m == 0.0) return 0.0;
  double lo = 0.0, hi = InverseTemps2::kMaxMagnitude;
  if (bures_alternative(hi) <= m)
    throw std::domain_error("invert_alternative: target needs |beta| > 50");
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bures_alternative(mid) < m ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Inverse temperatures whose Bures ensemble means equal the targets.
/// Newton on moments_2; the Jacobian d mean_i / d beta_j is minus the
/// ensemble covariance matrix.
inline InverseTemps2 fit_bures(double target1, double target2, const Tolerance& tol = {}) {
  if (!std::isfinite(target1) || !std::isfinite(target2)) throw std::domain_error("fit_bures: targets must be finite");
  const double m = std::hypot(target1, target2);
  if (m >= 1.0) throw std::domain_error("fit_bures: targets must lie inside the open unit disk");
  if (m == 0.0) return {0.0, 0.0};

  const double radial = invert_alternative(m);
  double b1 = -target1 / m * radial;
  double b2 = -target2 / m * radial;
  double residual = 0.0;
  for (int it = 0; it < 50; ++it) {
    const EnsembleMoments mo = bures::moments_2(InverseTemps2(b1, b2), tol);
    const double r1 = mo.mean1 - target1;
    const double r2 = mo.mean2 - target2;
    residual = std::max(std::abs(r1), std::abs(r2));
    if (residual < 1e-8) return {b1, b2};
    // beta += Sigma^{-1} r
    const double det = mo.var1 * mo.var2 - mo.cov * mo.cov;
    if (!(det > 0.0)) throw numeric_error("fit_bures: singular ensemble covariance");
    b1 += (mo.var2 * r1 - mo.cov * r2) / det;
    b2 += (mo.var1 * r2 - mo.cov * r1) / det;
    if (std::abs(b1) > InverseTemps2::kMaxMagnitude || std::abs(b2) > InverseTemps2::kMaxMagnitude)
      throw numeric_error("fit_bures: Newton iterate left |beta| <= 50");
  }
  throw numeric_error("fit_bures: no convergence in 50 Newton iterations, residual " + std::to_string(residual));
}

}  // namespace analysis
}  // namespace spinthermo
