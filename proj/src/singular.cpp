#include "lanemden/singular.hpp"

#include <cmath>

#include "lanemden/errors.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/gamma.hpp"

namespace lanemden {

namespace {

// d^k/dr^k r^{-beta} = falling(-beta, k) r^{-beta-k}
double power_derivative_coefficient(double beta, int k) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= (-beta - j);
  return c;
}

}  // namespace

Eigen::VectorXd SingularSolution::value(double r) const { return amplitude * std::pow(r, -beta) * direction; }

Eigen::VectorXd SingularSolution::derivative(double r, int k) const {
  return amplitude * power_derivative_coefficient(beta, k) * std::pow(r, -beta - k) * direction;
}

SingularSolution make_singular(const ProblemParams& params, Eigen::VectorXd direction) {
  params.validate();
  const double p_s = sobolev_exponent(params.n, params.s);
  if (!(params.p > p_s)) throw DomainError("make_singular: requires supercritical p > p_S(n, s)");
  if (direction.size() == 0) {
    direction = Eigen::VectorXd::Zero(params.m);
    direction[0] = 1.0;
  }
  if (direction.size() != params.m) throw DomainError("make_singular: direction must have m components");
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("make_singular: direction must be a unit vector");
  const double beta = params.beta_p();
  const double lambda = power_law_multiplier(params.n, params.s, beta);
  return SingularSolution{params, std::pow(lambda, 1.0 / (params.p - 1.0)), std::move(direction), beta};
}

Eigen::VectorXd residual_local(const SingularSolution& sol, double r) {
  if (!(r > 0.0)) throw DomainError("residual_local: r must be positive");
  const double n = sol.params.n;
  const double a = sol.amplitude;
  const double b = sol.beta;
  double operator_value;  // (-Delta)^s of the scalar profile a r^{-b}
  if (sol.params.s == 1.0) {
    const double d1 = a * power_derivative_coefficient(b, 1) * std::pow(r, -b - 1.0);
    const double d2 = a * power_derivative_coefficient(b, 2) * std::pow(r, -b - 2.0);
    operator_value = -(d2 + (n - 1.0) / r * d1);
  } else if (sol.params.s == 2.0) {
    // Delta r^{-g} = g (g + 2 - n) r^{-g-2}, applied twice.
    const double first = b * (b + 2.0 - n);
    const double second = (b + 2.0) * (b + 4.0 - n);
    operator_value = a * first * second * std::pow(r, -b - 4.0);
  } else {
    throw UnsupportedError("residual_local: only s = 1 and s = 2 have local residuals");
  }
  const double modulus = a * std::pow(r, -b);
  const double source = std::pow(modulus, sol.params.p);
  return (operator_value - source) * sol.direction;
}

StabilityVerdict is_singular_stable(const ProblemParams& params) {
  params.validate();
  if (!(params.p > sobolev_exponent(params.n, params.s)))
    throw DomainError("is_singular_stable: requires supercritical p > p_S(n, s)");
  const auto cond = fractional_condition(params);
  return {cond.margin <= 0.0, -cond.margin};
}

double growth_exponent(const SingularSolution& sol, GrowthKind which) {
  const double n = sol.params.n;
  switch (which) {
    case GrowthKind::Lp1: return n - (sol.params.p + 1.0) * sol.beta;
    case GrowthKind::L2: return n - 2.0 * sol.beta;
    case GrowthKind::GradSq: return n - 2.0 * sol.beta - 2.0;
  }
  return 0.0;
}

double growth_integral(const SingularSolution& sol, double R, GrowthKind which) {
  if (!(R > 0.0)) throw DomainError("growth_integral: R must be positive");
  const double sigma = growth_exponent(sol, which);
  if (!(sigma > 0.0)) throw DomainError("growth_integral: integral diverges at the origin");
  const double a = sol.amplitude;
  double coefficient = 0.0;
  switch (which) {
    case GrowthKind::Lp1: coefficient = std::pow(a, sol.params.p + 1.0); break;
    case GrowthKind::L2: coefficient = a * a; break;
    case GrowthKind::GradSq: coefficient = a * a * sol.beta * sol.beta; break;
  }
  return sphere_area(sol.params.n) * coefficient * std::pow(R, sigma) / sigma;
}

}  // namespace lanemden
