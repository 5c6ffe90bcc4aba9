#pragma once

// Special-function substrate: log-Gamma, sphere areas, and the multiplier of
// the fractional Laplacian on power laws,
//
//   (-Delta)^s |x|^{-beta} = lambda(n, s, beta) |x|^{-beta-2s},
//   lambda = 2^{2s} Gamma((beta+2s)/2) Gamma((n-beta)/2)
//                  / (Gamma(beta/2) Gamma((n-beta-2s)/2)),
//
// which yields the singular amplitude, the Hardy constants and the
// stability thresholds.  All ratios are formed in log domain.

namespace lanemden {

/// ln Gamma(x) for x > 0.  Throws DomainError otherwise.
double log_gamma(double x);

/// Gamma(x) for real x; throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// Surface area 2 pi^{n/2} / Gamma(n/2) of the unit sphere S^{n-1} in R^n.
double sphere_area(double n);

struct PowerLawMultiplierQuery {
  double n;
  double s;
  double beta;
};

/// lambda(n, s, beta) as above.  Requires n > 0, 0 < s <= 2 and
/// 0 < beta < n - 2s; the boundary values are rejected, not clamped.
double power_law_multiplier(const PowerLawMultiplierQuery& q);
inline double power_law_multiplier(double n, double s, double beta) {
  return power_law_multiplier(PowerLawMultiplierQuery{n, s, beta});
}

/// Optimal Hardy constant 2^{2s} Gamma((n+2s)/4)^2 / Gamma((n-2s)/4)^2, n > 2s.
double hardy_constant(double n, double s);

/// Gamma(1-s) / (2^{2s-1} Gamma(s)) for 0 < s < 1: the Neumann constant of
/// the degenerate extension problem.
double kappa_s(double s);

/// Weight exponent b = 3 - 2s of the higher-order extension (1 < s < 2).
double extension_weight_exponent(double s);

/// Normalizing constant C(n,s) = 4^s Gamma(n/2+s) / (pi^{n/2} |Gamma(-s)|) of the
/// singular-integral form (-Delta)^s u = C(n,s) PV int (u(x)-u(y))/|x-y|^{n+2s} dy.
double fractional_laplacian_constant(double n, double s);

}  // namespace lanemden
