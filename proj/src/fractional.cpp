#include "lanemden/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "lanemden/errors.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/gamma.hpp"
#include "lanemden/table_io.hpp"
#include "quadrature.hpp"

namespace lanemden {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("quadrature: rel_tol must lie in (0, 1)");
  if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be positive");
}

void KernelQuery::validate() const {
  quad.validate();
  if (!(n > 0.0)) throw DomainError("kernel: n must be positive");
  if (!((s > 0.0 && s < 1.0) || (s > 1.0 && s < 2.0)))
    throw DomainError("kernel: s must lie in (0,1) or (1,2), got " + format_number(s));
  if (!(n > 2.0 * s)) throw DomainError("kernel: requires n > 2s");
  if (!(alpha >= 0.0 && alpha <= n - 2.0 * s))
    throw DomainError("kernel: alpha must lie in [0, n-2s], got " + format_number(alpha));
  if (c == 1.0) throw DomainError("kernel: c = 1 is the non-integrable diagonal");
  if (!(c >= -1.0 && c < 1.0)) throw DomainError("kernel: c must lie in [-1, 1), got " + format_number(c));
}

namespace {

struct Sum {
  double value = 0.0;
  double error = 0.0;
  void add(double v, double e) {
    value += v;
    error += e;
  }
};

unsigned depth_for(const QuadratureSpec& quad) {
  return static_cast<unsigned>(std::clamp(std::ceil(std::log2(static_cast<double>(quad.max_subdivisions))), 1.0, 30.0));
}

template <unsigned Points, class F>
void gk(Sum& sum, F f, double a, double b, double tol, unsigned depth) {
  const auto e = detail::gk_adaptive<Points>(f, a, b, tol, depth);
  sum.add(e.value, e.error);
}

// Panels share one absolute tolerance taken from a coarse pass, so panels
// that contribute little are not refined to their own relative accuracy.
template <unsigned Points, class F>
void gk_panels(Sum& sum, F f, const std::vector<double>& breaks, double rel_tol, unsigned depth) {
  std::vector<detail::Estimate> coarse;
  double total = 0.0, mass = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    coarse.push_back(detail::gk_panel<Points>(f, breaks[k], breaks[k + 1]));
    total += coarse.back().value;
    mass += std::abs(coarse.back().value);
  }
  const double scale = total != 0.0 ? std::abs(total) : mass;
  const double abs_tol = rel_tol * scale / static_cast<double>(coarse.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const auto e = coarse[k].error <= abs_tol ? coarse[k] : detail::gk_bisect<Points>(f, breaks[k], breaks[k + 1], abs_tol, depth);
    sum.add(e.value, e.error);
  }
}

std::vector<double> dyadic(int from, int to) {
  std::vector<double> b;
  for (int k = to; k >= from; --k) b.push_back(std::ldexp(1.0, -k));
  return b;
}

void require_converged(const Sum& sum, double rel_tol, const char* who) {
  if (!std::isfinite(sum.value) || sum.error > rel_tol * std::abs(sum.value))
    throw ConvergenceError(std::string(who) + ": tolerance not met (value " + format_number(sum.value) +
                               ", error estimate " + format_number(sum.error) + ")",
                           sum.error);
}

// J(t) = int_{S^{n-1}} |theta - t sigma|^{-n-2s} dsigma, passed delta = |1 - t|.
double sphere_integral(int n, double s, double t, double delta, double tol, unsigned depth) {
  const double pi = boost::math::constants::pi<double>();
  const double e = -(n + 2.0 * s) / 2.0;
  const double k = n - 2.0;
  auto g = [&](double phi) {
    const double h = std::sin(0.5 * phi);
    return std::pow(std::sin(phi), k) * std::pow(delta * delta + 4.0 * t * h * h, e);
  };
  Sum sum;
  const double scale = t > 0.0 ? delta / std::sqrt(t) : pi;
  if (scale < 0.5) {
    double a = 0.0, b = scale;
    while (b < pi) {
      gk<31>(sum, g, a, b, tol, depth);
      a = b;
      b *= 2.0;
    }
    gk<31>(sum, g, a, pi, tol, depth);
  } else {
    gk<31>(sum, g, 0.0, 0.5 * pi, tol, depth);
    gk<31>(sum, g, 0.5 * pi, pi, tol, depth);
  }
  if (sum.error > 10.0 * tol * std::abs(sum.value) + 1e-300)
    throw ConvergenceError("sphere integral: tolerance not met at t = " + format_number(t), sum.error);
  return sphere_area(n - 1.0) * sum.value;
}

constexpr int kNearLevels = 100;  // delta panels down to 2^-100
constexpr int kFarLevels = 60;    // t panels down to 2^-60

// int_0^{t0} of the folded numerator times J(0) = |S^{n-1}|.
double origin_tail(int n, double s, double a, double t0) {
  auto mono = [t0](double e) { return std::pow(t0, e + 1.0) / (e + 1.0); };
  return sphere_area(n) * (mono(n - 1.0) - mono(n - 1.0 - a) + mono(2.0 * s - 1.0) - mono(2.0 * s - 1.0 + a));
}

double folded_numerator_direct(int n, double s, double a, double t) {
  return std::pow(t, n - 1.0) * (1.0 - std::pow(t, -a)) + std::pow(t, 2.0 * s - 1.0) * (1.0 - std::pow(t, a));
}

double pv_folded(int n, double s, double a, const QuadratureSpec& quad) {
  const unsigned depth = depth_for(quad);
  const double inner_tol = quad.rel_tol * 1e-2;
  const double outer_tol = quad.rel_tol * 1e-1;
  const double m = (n + 2.0 * s - 2.0) / 2.0;
  Sum sum;

  // t = 1 - delta in [1/2, 1): 4 t^m sinh((n-2s-a) L/2) sinh(a L/2) with L = log t.
  auto near = [&](double delta) {
    const double t = 1.0 - delta;
    const double L = std::log1p(-delta);
    const double N = 4.0 * std::exp(m * L) * std::sinh((n - 2.0 * s - a) * L / 2.0) * std::sinh(a * L / 2.0);
    return N * sphere_integral(n, s, t, delta, inner_tol, depth);
  };
  gk_panels<21>(sum, near, dyadic(1, kNearLevels + 1), outer_tol, depth);

  auto far = [&](double t) { return folded_numerator_direct(n, s, a, t) * sphere_integral(n, s, t, 1.0 - t, inner_tol, depth); };
  gk_panels<21>(sum, far, dyadic(1, kFarLevels), outer_tol, depth);
  sum.add(origin_tail(n, s, a, std::ldexp(1.0, -kFarLevels)), 0.0);

  require_converged(sum, quad.rel_tol, "pv integral");
  return sum.value;
}

constexpr double kPairedFloor = 1e-6;

// Unfolded principal value: pairs F(1 - delta) + F(1 + delta) on (0, 1), plus t > 2 through t = 1/tau.
double pv_paired(int n, double s, double a, const QuadratureSpec& quad) {
  const unsigned depth = depth_for(quad);
  const double inner_tol = std::min(quad.rel_tol * 1e-2, 1e-12);
  const double target = std::max(quad.rel_tol, kPairedFloor);
  const double outer_tol = target * 1e-1;
  constexpr int kPairLevels = 20;
  Sum sum;

  auto F = [&](double t, double delta) {
    return (1.0 - std::pow(t, -a)) * std::pow(t, n - 1.0) * sphere_integral(n, s, t, delta, inner_tol, depth);
  };
  auto pair = [&](double delta) { return F(1.0 - delta, delta) + F(1.0 + delta, delta); };
  gk_panels<21>(sum, pair, dyadic(0, kPairLevels), outer_tol, depth);
  // pair(delta) ~ c delta^{1-2s} below the last panel
  const double dmin = std::ldexp(1.0, -kPairLevels);
  sum.add(pair(dmin) * dmin / (2.0 - 2.0 * s), 0.0);

  auto tail = [&](double tau) {
    return (1.0 - std::pow(tau, a)) * std::pow(tau, 2.0 * s - 1.0) * sphere_integral(n, s, tau, 1.0 - tau, inner_tol, depth);
  };
  gk_panels<21>(sum, tail, dyadic(1, kFarLevels), outer_tol, depth);
  auto mono = [t0 = std::ldexp(1.0, -kFarLevels)](double e) { return std::pow(t0, e + 1.0) / (e + 1.0); };
  sum.add(sphere_area(n) * (mono(2.0 * s - 1.0) - mono(2.0 * s - 1.0 + a)), 0.0);

  require_converged(sum, target, "pv integral");
  return sum.value;
}

void require_pv_domain(int n, double s, const QuadratureSpec& quad, const char* who) {
  quad.validate();
  if (n < 2) throw DomainError(std::string(who) + ": requires integer n >= 2");
  if (s >= 1.0)
    throw UnsupportedError(std::string(who) + ": the principal-value integral is only evaluated for 0 < s < 1");
  if (!(s > 0.0)) throw DomainError(std::string(who) + ": requires s > 0");
}

double pv_constant(int n, double s, double a, const QuadratureSpec& quad) {
  const double raw = quad.folding ? pv_folded(n, s, a, quad) : pv_paired(n, s, a, quad);
  return fractional_laplacian_constant(n, s) * raw;
}

}  // namespace

double kernel_K(const KernelQuery& q) {
  q.validate();
  const double n = q.n, s = q.s, alpha = q.alpha;
  const double e1 = n - 1.0 - alpha, e2 = 2.0 * s - 1.0 + alpha;
  const double one_minus_c = 1.0 - q.c;
  const double power = -(n + 2.0 * s) / 2.0;
  auto f = [&](double t) {
    const double d = 1.0 - t;
    return (std::pow(t, e1) + std::pow(t, e2)) * std::pow(d * d + 2.0 * t * one_minus_c, power);
  };
  const unsigned depth = depth_for(q.quad);
  const double tol = q.quad.rel_tol * 1e-1;

  // dyadic panels toward t = 0 (t^e1, t^e2 may be non-smooth there), graded
  // toward t = 1 on the scale sqrt(2(1-c)) of the near-diagonal peak
  constexpr int kOriginLevels = 60;
  std::vector<double> breaks = dyadic(2, kOriginLevels);
  std::vector<double> upper{1.0};
  const double width = std::sqrt(2.0 * one_minus_c);
  for (double w = width; 1.0 - w > 0.25; w *= 2.0) upper.push_back(1.0 - w);
  breaks.insert(breaks.end(), upper.rbegin(), upper.rend());

  Sum sum;
  gk_panels<31>(sum, f, breaks, tol, depth);
  // below t0 the denominator is 1 + O(t0)
  const double t0 = breaks.front();
  sum.add(std::pow(t0, e1 + 1.0) / (e1 + 1.0) + std::pow(t0, e2 + 1.0) / (e2 + 1.0), 0.0);

  require_converged(sum, q.quad.rel_tol, "kernel_K");
  return sum.value;
}

double kernel_monotonicity_gap(double n, double s, double p, double c, const QuadratureSpec& quad) {
  if (!(n > 2.0 * s)) throw DomainError("kernel_monotonicity_gap: requires n > 2s");
  const double pS = sobolev_exponent(n, s);
  if (!(p >= pS)) throw DomainError("kernel_monotonicity_gap: requires p >= (n+2s)/(n-2s), got p = " + format_number(p));
  const double hardy_alpha = (n - 2.0 * s) / 2.0;
  const double alpha = 2.0 * s / (p - 1.0);
  KernelQuery upper{n, s, hardy_alpha, c, quad};
  upper.validate();
  if (p == pS || alpha == hardy_alpha) return 0.0;
  KernelQuery lower{n, s, alpha, c, quad};
  return kernel_K(upper) - kernel_K(lower);
}

double A_constant_quadrature(int n, double s, double p, const QuadratureSpec& quad) {
  require_pv_domain(n, s, quad, "A_constant_quadrature");
  if (!(p > sobolev_exponent(n, s)))
    throw DomainError("A_constant_quadrature: requires p > (n+2s)/(n-2s), got p = " + format_number(p));
  return pv_constant(n, s, 2.0 * s / (p - 1.0), quad);
}

double hardy_integral_quadrature(int n, double s, const QuadratureSpec& quad) {
  require_pv_domain(n, s, quad, "hardy_integral_quadrature");
  return pv_constant(n, s, (n - 2.0 * s) / 2.0, quad);
}

}  // namespace lanemden
