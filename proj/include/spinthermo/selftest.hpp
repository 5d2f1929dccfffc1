// Invariant suite behind `spinthermo selftest`. Every check is
// deterministic, so two runs print identical tables.
#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spinthermo/analysis.hpp"
#include "spinthermo/bures_model.hpp"
#include "spinthermo/oracles.hpp"
#include "spinthermo/quadrature.hpp"
#include "spinthermo/semiclassical.hpp"
#include "spinthermo/specfun.hpp"

namespace spinthermo::selftest {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Fault-injection hooks for exercising the suite itself.
struct Hooks {
  double ratio_perturbation = 0.0;  // added to every bessel_ratio value the suite sees
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline CheckResult bound_check(std::string name, double worst, double limit) {
  return {std::move(name), worst <= limit, "max deviation " + sci(worst) + " (limit " + sci(limit) + ")"};
}

inline std::vector<std::pair<double, double>> random_pairs(int n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n; ++i) {
    const double a = u(rng);
    out.emplace_back(a, u(rng));
  }
  return out;
}

}  // namespace detail

inline std::vector<CheckResult> run(const Hooks& hooks = {}) {
  using detail::bound_check;
  using std::numbers::pi;
  std::vector<CheckResult> out;
  auto ratio = [&](BesselOrder nu, double x) { return bessel_ratio(nu, x) + hooks.ratio_perturbation; };
  auto mag = [&](int d, double b) {
    if (b == 0.0) return 0.0;
    const double r = d == 1 ? std::tanh(std::abs(b)) + hooks.ratio_perturbation
                            : ratio(ModelDimension(d).upper_order(), std::abs(b));
    return b < 0 ? -r : r;
  };

  // --- specfun
  {
    double worst = 0.0;
    for (int tw = 1; tw <= 12; ++tw)
      for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0}) {
        const BesselOrder nu = BesselOrder::from_twice(tw);
        const double lo = bessel_i(nu.minus_one(), x);
        const double hi = bessel_i(BesselOrder::from_twice(tw + 2), x);
        worst = std::max(worst, std::abs(lo - hi - 2.0 * nu.value() / x * bessel_i(nu, x)) / lo);
      }
    out.push_back(bound_check("specfun.recurrence", worst, 1e-11));
  }
  {
    double worst = 0.0;
    for (double b : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) worst = std::max(worst, std::abs(std::tanh(b) - ratio(BesselOrder(1, 2), b)));
    out.push_back(bound_check("specfun.eq3_tanh_identity", worst, 1e-12));
  }
  {
    bool ok = true;
    bool bounded = true;
    bool ordered = true;
    for (int d : {1, 3, 4, 6}) {
      double prev = 0.0;
      for (int i = 1; i <= 1000; ++i) {
        const double b = 30.0 * i / 1000.0;
        const double v = mag(d, b);
        // tanh rounds to 1 beyond ~19, so saturation is allowed where the slope stays positive
        ok = ok && v >= prev && (v > prev || 1.0 - v < 1e-14) && magnetization_slope(ModelDimension(d), b) > 0.0;
        bounded = bounded && v > 0.0 && (v < 1.0 || (v == 1.0 && b > 15.0));
        prev = v;
      }
    }
    for (int i = 1; i <= 200; ++i) {
      const double b = 10.0 * i / 200.0;
      ordered = ordered && mag(1, b) > mag(3, b) && mag(3, b) > mag(4, b) && mag(4, b) > mag(6, b);
    }
    out.push_back({"specfun.monotonicity", ok, "D in {1,3,4,6}, 1000 points on (0,30], positive slope"});
    out.push_back({"specfun.bounds", bounded, "0 < M < 1 for beta > 0"});
    out.push_back({"specfun.dimension_ordering", ordered, "M1 > M3 > M4 > M6 on (0,10]"});
  }
  {
    double worst = 0.0;
    for (int tw = 0; tw <= 12; ++tw)
      for (double x : {0.5, 5.0, 29.0, 31.0, 75.0, 300.0}) {
        const BesselOrder nu = BesselOrder::from_twice(tw);
        worst = std::max(worst, std::abs(bessel_i(nu, x) / (bessel_i_scaled(nu, x) * std::exp(x)) - 1.0));
      }
    out.push_back(bound_check("specfun.scaled_unscaled", worst, 1e-10));
  }
  {
    double worst = 0.0;
    const double h = 1e-5;
    for (int d : {1, 3, 4, 6})
      for (double b : {0.3, 1.0, 2.5, 7.0}) {
        const double fd = (mag(d, b + h) - mag(d, b - h)) / (2 * h);
        worst = std::max(worst, std::abs(magnetization_slope(ModelDimension(d), b) - fd));
      }
    out.push_back(bound_check("specfun.slope_vs_finite_difference", worst, 1e-9));
  }
  {
    const double c50 = heat_capacity(ModelDimension(4), 50), c100 = heat_capacity(ModelDimension(4), 100),
                 c200 = heat_capacity(ModelDimension(4), 200);
    const bool ok = std::abs(c50 / 1.5 - 1) < 0.02 && std::abs(c200 - 1.5) < std::abs(c100 - 1.5) &&
                    std::abs(c100 - 1.5) < std::abs(c50 - 1.5) && heat_capacity(ModelDimension(1), 10) < 1e-3;
    out.push_back({"specfun.heat_capacity_limit", ok, "C4(50,100,200) -> 3/2, C1(10) < 1e-3"});
  }

  // --- quadrature
  {
    const Tolerance tol;
    auto f = [](double x) { return std::exp(x) * std::sin(3 * x); };
    auto g = [](double x) { return 1.0 / (1.0 + x * x); };
    const QuadResult rf = integrate_1d(f, 0, 2, tol), rg = integrate_1d(g, 0, 2, tol);
    const QuadResult rc = integrate_1d([&](double x) { return 2.5 * f(x) - 1.5 * g(x); }, 0, 2, tol);
    const double dev = std::abs(rc.value - (2.5 * rf.value - 1.5 * rg.value));
    const double allowed = rc.error_estimate + 2.5 * rf.error_estimate + 1.5 * rg.error_estimate;
    out.push_back({"quadrature.linearity", dev <= allowed, "deviation " + detail::sci(dev) + " vs combined error " + detail::sci(allowed)});
  }
  {
    auto radial = [](double x, double y) { return std::exp(-(x * x + y * y)) * std::cos(x * x + y * y); };
    const QuadResult a = integrate_disk(radial);
    const QuadResult b = integrate_disk([&](double x, double y) { return radial(y, x); });
    out.push_back(bound_check("quadrature.disk_swap_symmetry", std::abs(a.value - b.value), 1e-12));
  }
  {
    double worst_ratio = 0.0;
    std::string worst_name;
    for (const auto& c : oracles::closed_form_suite()) {
      const QuadResult r = integrate_1d(c.f, c.a, c.b);
      const double ratio_err = std::abs(r.value - c.exact) / std::max(r.error_estimate, 1e-300);
      if (ratio_err > worst_ratio) {
        worst_ratio = ratio_err;
        worst_name = c.name;
      }
    }
    out.push_back({"quadrature.error_honesty", worst_ratio <= 10.0,
                   "worst true/estimated error " + detail::sci(worst_ratio) + " (" + worst_name + ")"});
  }
  {
    auto f = [](double x, double y) { return std::exp(-1.3 * x + 0.7 * y) * (1 + x * y); };
    const QuadResult a = integrate_disk(f), b = integrate_disk(f);
    out.push_back({"quadrature.determinism", a.value == b.value && a.error_estimate == b.error_estimate,
                   "repeated disk integration bit-identical"});
  }

  // --- semiclassical
  const auto pairs = detail::random_pairs(25, -3.0, 3.0, 20240601);
  {
    double worst = 0.0;
    const double h = 1e-5;
    for (auto [l1, l2] : pairs) {
      const auto [m1, m2] = semiclassical::mean({l1, l2});
      const double d1 = (semiclassical::omega({l1 + h, l2}) - semiclassical::omega({l1 - h, l2})) / (2 * h);
      const double d2 = (semiclassical::omega({l1, l2 + h}) - semiclassical::omega({l1, l2 - h})) / (2 * h);
      worst = std::max({worst, std::abs(d1 - m1), std::abs(d2 - m2)});
    }
    out.push_back(bound_check("semiclassical.omega_gradient", worst, 1e-8));
  }
  {
    double worst = 0.0;
    const Matrix2c s1 = pauli_matrix(Pauli::sigma1), s2 = pauli_matrix(Pauli::sigma2);
    for (auto [l1, l2] : pairs) {
      const Matrix2c rho = oracles::maxent_state(l1, l2);
      auto tr = [&](const Matrix2c& op) { return (rho * op).trace().real(); };
      const double e1 = tr(s1), e2 = tr(s2);
      const SemiclassicalMoments m = semiclassical::moments({l1, l2});
      worst = std::max({worst, std::abs(m.mean1 - e1), std::abs(m.mean2 - e2), std::abs(m.var1 - (tr(s1 * s1) - e1 * e1)),
                        std::abs(m.var2 - (tr(s2 * s2) - e2 * e2)),
                        std::abs(m.cov - (0.5 * tr(s1 * s2 + s2 * s1) - e1 * e2))});
    }
    out.push_back(bound_check("semiclassical.matrix_exponential_oracle", worst, 1e-10));
  }
  {
    double worst_rot = 0.0, worst_rad = 0.0, worst_fit = 0.0;
    for (auto [l1, l2] : pairs) {
      const double th = 0.7;
      const auto [m1, m2] = semiclassical::mean({l1, l2});
      const auto [r1, r2] = semiclassical::mean({std::cos(th) * l1 - std::sin(th) * l2, std::sin(th) * l1 + std::cos(th) * l2});
      worst_rot = std::max({worst_rot, std::abs(r1 - (std::cos(th) * m1 - std::sin(th) * m2)),
                            std::abs(r2 - (std::sin(th) * m1 + std::cos(th) * m2))});
      worst_rad = std::max(worst_rad, std::abs(std::hypot(m1, m2) - std::tanh(std::hypot(l1, l2))));
      const LagrangeMultipliers back = semiclassical::fit(m1, m2);
      worst_fit = std::max({worst_fit, std::abs(back.lambda1 - l1), std::abs(back.lambda2 - l2)});
    }
    out.push_back(bound_check("semiclassical.rotational_covariance", worst_rot, 1e-12));
    out.push_back(bound_check("semiclassical.radial_reduction", worst_rad, 1e-12));
    out.push_back(bound_check("semiclassical.fit_roundtrip", worst_fit, 1e-8));
  }

  // --- bures model
  const Tolerance tight{1e-13, 1e-13, 2000};
  {
    double worst_grad = 0.0, worst_hess = 0.0;
    const double h = 1e-4, h2 = 2e-3;
    for (double b1 : {-3.0, 0.0, 3.0})
      for (double b2 : {-3.0, 0.0, 3.0}) {
        auto lnz = [&](double x, double y) { return std::log(bures::partition_2({x, y}, tight).value); };
        const EnsembleMoments m = bures::moments_2({b1, b2}, tight);
        const double g1 = (lnz(b1 + h, b2) - lnz(b1 - h, b2)) / (2 * h);
        const double g2 = (lnz(b1, b2 + h) - lnz(b1, b2 - h)) / (2 * h);
        const double s1 = std::sqrt(m.var1), s2 = std::sqrt(m.var2);
        worst_grad = std::max({worst_grad, std::abs(-g1 - m.mean1) / std::max(std::abs(m.mean1), s1),
                               std::abs(-g2 - m.mean2) / std::max(std::abs(m.mean2), s2)});
        const double l0 = lnz(b1, b2);
        const double d11 = (lnz(b1 + h2, b2) - 2 * l0 + lnz(b1 - h2, b2)) / (h2 * h2);
        const double d12 = (lnz(b1 + h2, b2 + h2) - lnz(b1 + h2, b2 - h2) - lnz(b1 - h2, b2 + h2) + lnz(b1 - h2, b2 - h2)) /
                           (4 * h2 * h2);
        worst_hess = std::max({worst_hess, std::abs(d11 - m.var1) / m.var1,
                               std::abs(d12 - m.cov) / std::max(std::abs(m.cov), s1 * s2)});
      }
    out.push_back(bound_check("bures.log_partition_gradient", worst_grad, 1e-5));
    out.push_back(bound_check("bures.log_partition_hessian", worst_hess, 1e-4));
  }
  {
    double worst = 0.0;
    for (double b : {0.5, 2.0, 7.0}) {
      const double za = bures::partition_2({b, 0}).value;
      const double zb = bures::partition_2({0, b}).value;
      const double zc = bures::partition_2({b / std::sqrt(2.0), b / std::sqrt(2.0)}).value;
      worst = std::max({worst, std::abs(za - zb) / za, std::abs(za - zc) / za});
    }
    out.push_back(bound_check("bures.rotational_invariance", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (double b : {0.0, 1.0, 3.0, 5.0}) {
      const InverseTemps2 t(b, -0.6 * b);
      worst = std::max(worst, std::abs(bures::partition_2(t).value / bures::closed_partition_2(t) - 1));
    }
    out.push_back(bound_check("bures.partition_closed_form", worst, 1e-8));
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (auto [b1, b2] : {std::pair{1.2, -0.4}, std::pair{-2.0, 2.5}, std::pair{0.0, 1.7}, std::pair{3.0, 0.0}}) {
      const EnsembleMoments p = bures::moments_2({b1, b2}), n = bures::moments_2({-b1, -b2});
      worst = std::max({worst, std::abs(p.mean1 + n.mean1), std::abs(p.mean2 + n.mean2), std::abs(p.var1 - n.var1),
                        std::abs(p.var2 - n.var2), std::abs(p.cov - n.cov)});
      if (b1 == 0.0 || b2 == 0.0) ok = ok && std::abs(p.cov) < 1e-9;
    }
    out.push_back({"bures.parity", ok && worst < 1e-9, "max deviation " + detail::sci(worst)});
  }
  {
    double worst = 0.0;
    for (auto [b1, b2] : {std::pair{0.0, 0.0}, std::pair{1.0, -2.0}, std::pair{-3.0, 0.5}}) {
      const double z3 = bures::partition_3({b1, b2, 0.0}, {}, ReducedForm3::direct).value;
      worst = std::max(worst, std::abs(z3 - bures::partition_2({b1, b2}).value));
    }
    out.push_back(bound_check("bures.marginalization", worst, 1e-9));
  }
  {
    bool ok = true;
    for (double b1 : {-4.0, -1.0, 0.0, 2.0, 5.0})
      for (double b2 : {-3.0, 0.0, 1.5, 4.0}) {
        const EnsembleMoments m = bures::moments_2({b1, b2});
        ok = ok && std::abs(m.mean1) < 1 && std::abs(m.mean2) < 1 && m.var1 > 0 && m.var2 > 0 &&
             m.var1 <= 0.25 + 1e-9 && m.var2 <= 0.25 + 1e-9 && std::abs(m.cov) <= std::sqrt(m.var1 * m.var2);
      }
    out.push_back({"bures.moment_bounds", ok, "|mean| < 1, 0 < var <= 1/4, Cauchy-Schwarz"});
  }
  {
    const InverseTemps3 t(0.0, 0.0, 1.0);
    const double d = bures::partition_3(t, {}, ReducedForm3::direct).value;
    const double f = bures::partition_3(t, {}, ReducedForm3::full3d).value;
    out.push_back(bound_check("bures.direct_reduction_vs_ball", std::abs(d - f), 1e-8));
  }

  // --- analysis
  {
    const ExtremumReport r = analysis::find_max_difference();
    const bool ok = std::abs(r.argmax - 1.45489) <= 1e-3 && std::abs(r.max_value - 0.561292) <= 1e-4 &&
                    analysis::tanh_minus_alternative(r.argmax + 0.01) < r.max_value &&
                    analysis::tanh_minus_alternative(r.argmax - 0.01) < r.max_value;
    char buf[96];
    std::snprintf(buf, sizeof buf, "argmax %.6f, max %.6f", r.argmax, r.max_value);
    out.push_back({"analysis.curve_gap_extremum", ok, buf});
  }
  {
    const GridSpec small{-2.0, 2.0, 5, -2.0, 2.0, 5};
    const SurfaceGrid mean = analysis::difference_surface(Quantity::mean1, small);
    const SurfaceGrid cov = analysis::difference_surface(Quantity::cov, small);
    const SurfaceGrid var = analysis::difference_surface(Quantity::var1, small);
    const bool ok = std::abs(mean.at(2, 2)) < 1e-12 && std::abs(cov.at(2, 2)) < 1e-12 && std::abs(var.at(2, 2) + 0.75) < 1e-8;
    out.push_back({"analysis.difference_at_origin", ok, "mean, cov -> 0; var -> -3/4"});
    const SurfaceGrid again = analysis::difference_surface(Quantity::mean1, small);
    out.push_back({"analysis.surface_reproducible", again.values == mean.values, "bit-identical repeat"});
    bool signs = true;
    const SurfaceGrid bm = analysis::surface(Model::bures, Quantity::mean1, small);
    const SurfaceGrid sm = analysis::surface(Model::semiclassical, Quantity::mean1, small);
    for (std::size_t k = 0; k < bm.values.size(); ++k) {
      const double a = bm.values[k], b = sm.values[k];
      signs = signs && std::abs(a) < 1 && std::abs(b) < 1 && (std::abs(b) < 1e-14 ? std::abs(a) < 1e-9 : a * b > 0);
    }
    out.push_back({"analysis.mean_sign_agreement", signs, "bures and semiclassical means share sign"});
  }
  {
    double worst = 0.0;
    for (double b1 : {-3.0, 0.0, 3.0})
      for (double b2 : {-3.0, 0.0, 3.0}) {
        if (b1 == 0.0 && b2 == 0.0) continue;
        const auto [m1, m2] = bures::closed_mean_2({b1, b2});
        const InverseTemps2 fit = analysis::fit_bures(m1, m2);
        worst = std::max({worst, std::abs(fit.beta1 - b1), std::abs(fit.beta2 - b2)});
      }
    const InverseTemps2 origin = analysis::fit_bures(0.0, 0.0);
    worst = std::max({worst, std::abs(origin.beta1), std::abs(origin.beta2)});
    out.push_back(bound_check("analysis.fit_bures_roundtrip", worst, 1e-6));
  }
  {
    const SurfaceGrid g = analysis::difference_surface(Quantity::mean1, GridSpec{});
    std::size_t best = 0;
    for (std::size_t k = 1; k < g.values.size(); ++k)
      if (std::abs(g.values[k]) > std::abs(g.values[best])) best = k;
    const double b1 = g.spec.axis1(static_cast<int>(best / g.spec.steps2));
    const double b2 = g.spec.axis2(static_cast<int>(best % g.spec.steps2));
    out.push_back({"analysis.mean_difference_near_origin", std::hypot(b1, b2) <= 3.0,
                   "max |mean difference| at radius " + detail::sci(std::hypot(b1, b2))});
  }
  return out;
}

}  // namespace spinthermo::selftest
