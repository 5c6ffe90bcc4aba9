#pragma once

#include <Eigen/Dense>

#include "lanemden/params.hpp"

namespace lanemden {

/// The homogeneous solution u(x) = amplitude * direction * |x|^{-beta},
/// beta = 2s/(p-1), amplitude^{p-1} = lambda(n, s, beta).
struct SingularSolution {
  ProblemParams params;
  double amplitude;
  Eigen::VectorXd direction;
  double beta;

  Eigen::VectorXd value(double r) const;
  /// k-th radial derivative of the profile.
  Eigen::VectorXd derivative(double r, int k) const;
};

/// Requires p > p_S(n, s) strictly; direction must have size m and unit norm
/// (an empty direction means e_1).
SingularSolution make_singular(const ProblemParams& params, Eigen::VectorXd direction = {});

/// (-Delta)^s u_i - |u|^{p-1} u_i from the analytic derivatives of r^{-beta}
/// (s = 1 or 2 only).
Eigen::VectorXd residual_local(const SingularSolution& sol, double r);

struct StabilityVerdict {
  bool stable;    ///< p * |A|^{p-1} <= Lambda_{n,s}
  double margin;  ///< Lambda_{n,s} - p * |A|^{p-1}
};

StabilityVerdict is_singular_stable(const ProblemParams& params);

enum class GrowthKind { Lp1, L2, GradSq };

/// Exponent sigma of R in the closed-form ball integral.
double growth_exponent(const SingularSolution& sol, GrowthKind which);

/// Closed form of int_{B_R} |u|^{p+1}, |u|^2 or sum |grad u_i|^2.  Throws
/// DomainError when the integral diverges at the origin.
double growth_integral(const SingularSolution& sol, double R, GrowthKind which);

}  // namespace lanemden
