#pragma once

namespace lanemden {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  /// fold t -> 1/t onto (0,1]; false pairs t = 1 -+ delta instead, which loses
  /// digits to cancellation and never targets better than 1e-6
  bool folding = true;

  void validate() const;
};

/// K_alpha(c) = int_0^1 (t^{n-1-alpha} + t^{2s-1+alpha}) / (t^2 + 1 - 2tc)^{(n+2s)/2} dt.
struct KernelQuery {
  double n;
  double s;      ///< in (0,1) or (1,2)
  double alpha;  ///< in [0, n-2s]
  double c;      ///< in [-1, 1)
  QuadratureSpec quad;

  void validate() const;
};

double kernel_K(const KernelQuery& q);

/// K_{(n-2s)/2}(c) - K_{2s/(p-1)}(c); zero at p = (n+2s)/(n-2s), negative above.
double kernel_monotonicity_gap(double n, double s, double p, double c, const QuadratureSpec& quad = {});

/// C(n,s) PV int_0^inf int_{S^{n-1}} (1 - t^{-2s/(p-1)}) t^{n-1} / |theta - t sigma|^{n+2s} dsigma dt,
/// which reproduces lambda(n, s, 2s/(p-1)).  n >= 2 integer, 0 < s < 1.
double A_constant_quadrature(int n, double s, double p, const QuadratureSpec& quad = {});

/// The same integral with exponent (n-2s)/2; reproduces the Hardy constant.
double hardy_integral_quadrature(int n, double s, const QuadratureSpec& quad = {});

}  // namespace lanemden
