#pragma once

#include <optional>

namespace lanemden {

/// Coefficients of Delta_theta^2 psi - alpha Delta_theta psi + beta psi = |psi|^{p-1} psi.
struct AngularCoefficients {
  double q;      ///< 4/(p-1)
  double alpha;  ///< (q+2)(n-4-q) + q(n-2-q)
  double beta;   ///< q(q+2)(n-4-q)(n-2-q)
};

AngularCoefficients angular_coefficients(int n, double p);

/// beta^{1/(p-1)}: the amplitude of the constant angular solution.  Throws
/// DomainError unless p > (n+4)/(n-4), and checks it against the singular amplitude.
double constant_solution_check(int n, double p);

struct StabilityTriple {
  double c1;  ///< p - 1
  double c2;  ///< p alpha - n(n-4)/2
  double c3;  ///< p beta - n^2 (n-4)^2 / 16
  bool all_positive() const { return c1 > 0.0 && c2 > 0.0 && c3 > 0.0; }
};

StabilityTriple stability_triple(int n, double p);

/// Second-order pair (p - 1, p beta_1 - (n-2)^2/4), beta_1 = lambda(n, 1, 2/(p-1)).
struct StabilityPair {
  double c1;
  double c2;
  bool all_positive() const { return c1 > 0.0 && c2 > 0.0; }
};

StabilityPair stability_pair(int n, double p);

enum class CutoffProfile {
  LogLinear,      ///< eta linear in log r on the ramps; H^1 only
  LogSmoothstep,  ///< eta = x^2 (3 - 2x) in x = log(2r/eps)/log 2; C^1, usable for s = 2
};

/// eta = 1 on [eps, 1/eps], ramps on [eps/2, eps] and [1/eps, 2/eps], zero elsewhere.
struct CutoffSpec {
  double epsilon = 1e-3;
  CutoffProfile profile = CutoffProfile::LogSmoothstep;

  void validate(double s) const;
};

struct ProbeResult {
  double value;               ///< Q(phi) = ||phi||^2_{H^s} - p int |u_s|^{p-1} phi^2
  double potential_integral;  ///< int |u_s|^{p-1} phi^2
  double ratio;               ///< value / potential_integral
};

/// Quadratic form of the linearisation at the singular solution on the test
/// function phi = r^{-(n-2s)/2} eta(r) (constant angular part), by 1D quadrature in log r.
ProbeResult singular_instability_probe(int n, int s, double p, const CutoffSpec& cutoff);

}  // namespace lanemden
