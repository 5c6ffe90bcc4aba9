#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lanemden::detail {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// One Gauss-Kronrod panel.  Mapped onto [-1, 1] by hand so that the error
// estimate scales with the panel width (the library's recursive driver leaves
// it unscaled).
template <unsigned Points, class F>
Estimate gk_panel(F&& f, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  auto g = [&](double x) { return f(mid + half * x); };
  double err = 0.0, l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, Points>::integrate(g, -1.0, 1.0, 0, 0.0, &err, &l1);
  return {half * v, std::abs(half) * err, std::abs(half) * l1};
}

template <unsigned Points, class F>
Estimate gk_bisect(F&& f, double a, double b, double abs_tol, unsigned depth) {
  const auto e = gk_panel<Points>(f, a, b);
  if (depth == 0 || e.error <= abs_tol) return e;
  const double m = 0.5 * (a + b);
  const auto l = gk_bisect<Points>(f, a, m, 0.5 * abs_tol, depth - 1);
  const auto r = gk_bisect<Points>(f, m, b, 0.5 * abs_tol, depth - 1);
  return {l.value + r.value, l.error + r.error, l.l1 + r.l1};
}

/// Adaptive bisection to rel_tol times the L1 norm of the first panel estimate.
template <unsigned Points, class F>
Estimate gk_adaptive(F&& f, double a, double b, double rel_tol, unsigned depth) {
  const auto e = gk_panel<Points>(f, a, b);
  const double abs_tol = rel_tol * e.l1;
  if (depth == 0 || e.error <= abs_tol) return e;
  const double m = 0.5 * (a + b);
  const auto l = gk_bisect<Points>(f, a, m, 0.5 * abs_tol, depth - 1);
  const auto r = gk_bisect<Points>(f, m, b, 0.5 * abs_tol, depth - 1);
  return {l.value + r.value, l.error + r.error, l.l1 + r.l1};
}

}  // namespace lanemden::detail
