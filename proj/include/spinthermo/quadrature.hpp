// Deterministic adaptive Gauss-Kronrod (7/15) quadrature on intervals, the
// unit disk and the unit ball under the Bures volume element.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace spinthermo {

struct Tolerance {
  double absolute = 1e-10;
  double relative = 1e-10;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(absolute >= 0.0) || !(relative >= 0.0))
      throw std::domain_error("Tolerance: absolute and relative must be >= 0");
    if (absolute == 0.0 && relative == 0.0)
      throw std::domain_error("Tolerance: absolute or relative must be positive");
    if (max_subdivisions < 1) throw std::domain_error("Tolerance: max_subdivisions must be positive");
  }

  double target(double value) const { return std::max(absolute, relative * std::abs(value)); }

  // Budget handed to an inner level of an iterated integral.
  Tolerance nested() const { return {absolute / 10.0, relative / 10.0, max_subdivisions}; }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Raised when an integrand returns NaN or infinity.
class integrand_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// QUADPACK qk15 abscissae and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505119480133883333333333, 0.417959183673469387755102040816327};

// An integrand may return a plain double or a value carrying its own error
// (an inner level of an iterated integral).
struct Sample {
  double value;
  double error;
  std::size_t evaluations;
  bool converged;
};

template <class F>
Sample sample(F& f, double x) {
  using R = std::invoke_result_t<F&, double>;
  Sample s;
  if constexpr (std::is_same_v<std::decay_t<R>, QuadResult>) {
    const QuadResult r = f(x);
    s = {r.value, r.error_estimate, r.evaluations, r.converged};
  } else {
    s = {static_cast<double>(f(x)), 0.0, 1, true};
  }
  if (!std::isfinite(s.value)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "integrand returned a non-finite value (" << s.value << ") at x = " << x;
    throw integrand_error(msg.str());
  }
  return s;
}

struct Segment {
  double a;
  double b;
  double value;
  double error;
  std::size_t order;  // creation index, breaks ties deterministically

  friend bool operator<(const Segment& l, const Segment& r) {
    if (l.error != r.error) return l.error < r.error;
    return l.order > r.order;
  }
};

struct RuleOutput {
  Segment segment;
  std::size_t evaluations;
  bool inner_converged;
};

template <class F>
RuleOutput gauss_kronrod15(F& f, double a, double b) {
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  std::size_t evals = 0;
  bool inner_ok = true;
  double inner_err = 0.0;
  auto eval = [&](double x, double w) {
    const Sample s = sample(f, x);
    evals += s.evaluations;
    inner_ok = inner_ok && s.converged;
    inner_err += w * s.error;
    return s.value;
  };

  const double fc = eval(centr, kWgk[7]);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{}, fv2{};
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = eval(centr - absc, kWgk[jtw]);
    const double f2 = eval(centr + absc, kWgk[jtw]);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = eval(centr - absc, kWgk[jtwm1]);
    const double f2 = eval(centr + absc, kWgk[jtwm1]);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double result = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > uflow / (50.0 * epmach)) abserr = std::max(epmach * 50.0 * resabs, abserr);
  abserr += dhlgth * inner_err;
  return {{a, b, result, abserr, 0}, evals, inner_ok};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7/15 with bisection of the worst subinterval.
/// `f` returns double, or QuadResult when it is itself an integral; inner
/// error estimates are then folded into the outer ones.
template <class F>
QuadResult integrate_1d(F&& f, double a, double b, const Tolerance& tol = {}) {
  tol.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::domain_error("integrate_1d: limits must be finite");
  if (a == b) return {0.0, 0.0, 0, true};
  if (a > b) {
    QuadResult r = integrate_1d(std::forward<F>(f), b, a, tol);
    r.value = -r.value;
    return r;
  }

  std::vector<detail::Segment> heap;
  heap.reserve(static_cast<std::size_t>(tol.max_subdivisions) + 1);
  std::size_t evaluations = 0;
  bool inner_ok = true;
  std::size_t order = 0;

  auto apply = [&](double lo, double hi) {
    detail::RuleOutput out = detail::gauss_kronrod15(f, lo, hi);
    evaluations += out.evaluations;
    inner_ok = inner_ok && out.inner_converged;
    out.segment.order = order++;
    return out.segment;
  };

  heap.push_back(apply(a, b));
  double value = heap.front().value;
  double error = heap.front().error;
  int subdivisions = 1;
  bool exhausted = false;

  while (error > tol.target(value)) {
    if (subdivisions >= tol.max_subdivisions) {
      exhausted = true;
      break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const detail::Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      exhausted = true;
      break;
    }
    const detail::Segment left = apply(worst.a, mid);
    const detail::Segment right = apply(mid, worst.b);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    ++subdivisions;

    value = 0.0;
    error = 0.0;
    for (const auto& s : heap) {
      value += s.value;
      error += s.error;
    }
  }

  QuadResult r;
  r.value = value;
  r.error_estimate = error;
  r.evaluations = evaluations;
  r.converged = !exhausted && inner_ok && error <= tol.target(value);
  return r;
}

/// Integral over the closed unit disk as an iterated integral
/// x in [-1, 1], y in [-sqrt(1-x^2), sqrt(1-x^2)].
template <class F>
QuadResult integrate_disk(F&& f, const Tolerance& tol = {}) {
  tol.validate();
  const Tolerance inner = tol.nested();
  auto slice = [&](double x) -> QuadResult {
    const double h = std::sqrt(std::max(0.0, 1.0 - x * x));
    if (h == 0.0) return {0.0, 0.0, 0, true};
    return integrate_1d([&](double y) { return f(x, y); }, -h, h, inner);
  };
  return integrate_1d(slice, -1.0, 1.0, tol);
}

/// Integral of f(s) / (8 sqrt(1 - |s|^2)) over the unit ball. With
/// |s| = sin(psi) the boundary singularity cancels against the Jacobian and
/// the integrand becomes f * sin^2(psi) sin(theta) / 8 on a box.
template <class F>
QuadResult integrate_ball_bures(F&& f, const Tolerance& tol = {}) {
  tol.validate();
  const Tolerance mid_tol = tol.nested();
  const Tolerance inner_tol = mid_tol.nested();
  constexpr double pi = std::numbers::pi;

  auto shell = [&](double psi) -> QuadResult {
    const double rho = std::sin(psi);
    const double radial = rho * rho / 8.0;
    if (radial == 0.0) return {0.0, 0.0, 0, true};
    auto cone = [&](double theta) -> QuadResult {
      const double st = std::sin(theta);
      const double z = rho * std::cos(theta);
      const double rxy = rho * st;
      const double w = radial * st;
      return integrate_1d(
          [&](double phi) { return w * f(rxy * std::cos(phi), rxy * std::sin(phi), z); }, 0.0, 2.0 * pi,
          inner_tol);
    };
    return integrate_1d(cone, 0.0, pi, mid_tol);
  };
  return integrate_1d(shell, 0.0, 0.5 * pi, tol);
}

}  // namespace spinthermo
