#include "lanemden/gamma.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "lanemden/errors.hpp"

namespace lanemden {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) throw DomainError("log_gamma: argument must be positive and finite, got " + fmt(x));
  return boost::math::lgamma(x);
}

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma: pole at " + fmt(x));
  return boost::math::tgamma(x);
}

double sphere_area(double n) {
  if (!std::isfinite(n) || n <= 0.0) throw DomainError("sphere_area: n must be positive, got " + fmt(n));
  return 2.0 * std::exp(0.5 * n * std::log(std::numbers::pi) - log_gamma(0.5 * n));
}

double power_law_multiplier(const PowerLawMultiplierQuery& q) {
  if (!std::isfinite(q.n) || q.n <= 0.0) throw DomainError("power_law_multiplier: n must be positive");
  if (!(q.s > 0.0 && q.s <= 2.0)) throw DomainError("power_law_multiplier: s must lie in (0, 2]");
  const double upper = q.n - 2.0 * q.s;
  if (!(q.beta > 0.0)) throw DomainError("power_law_multiplier: beta = " + fmt(q.beta) + " violates beta > 0");
  if (!(q.beta < upper))
    throw DomainError("power_law_multiplier: beta = " + fmt(q.beta) + " violates beta < n - 2s = " + fmt(upper));
  const double log_value = 2.0 * q.s * std::numbers::ln2 + log_gamma(0.5 * q.beta + q.s) +
                           log_gamma(0.5 * (q.n - q.beta)) - log_gamma(0.5 * q.beta) -
                           log_gamma(0.5 * (upper - q.beta));
  return std::exp(log_value);
}

double hardy_constant(double n, double s) {
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("hardy_constant: s must lie in (0, 2]");
  if (!(n > 2.0 * s)) throw DomainError("hardy_constant: requires n > 2s (n = " + fmt(n) + ", s = " + fmt(s) + ")");
  const double log_ratio = log_gamma(0.25 * (n + 2.0 * s)) - log_gamma(0.25 * (n - 2.0 * s));
  return std::exp(2.0 * s * std::numbers::ln2 + 2.0 * log_ratio);
}

double kappa_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("kappa_s: s must lie in (0, 1), got " + fmt(s));
  return std::exp(log_gamma(1.0 - s) - (2.0 * s - 1.0) * std::numbers::ln2 - log_gamma(s));
}

double extension_weight_exponent(double s) {
  if (!(s > 1.0 && s < 2.0)) throw DomainError("extension_weight_exponent: s must lie in (1, 2)");
  return 3.0 - 2.0 * s;
}

double fractional_laplacian_constant(double n, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional_laplacian_constant: s must lie in (0, 1)");
  if (!(n > 0.0)) throw DomainError("fractional_laplacian_constant: n must be positive");
  // |Gamma(-s)| = Gamma(1-s)/s for 0 < s < 1.
  const double log_abs_gamma_minus_s = log_gamma(1.0 - s) - std::log(s);
  return std::exp(2.0 * s * std::numbers::ln2 + log_gamma(0.5 * n + s) - 0.5 * n * std::log(std::numbers::pi) -
                  log_abs_gamma_minus_s);
}

}  // namespace lanemden
