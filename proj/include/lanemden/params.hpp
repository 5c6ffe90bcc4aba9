#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace lanemden {

/// Per-component coefficients of the generalized right-hand side
/// |u|^{p-1} (alpha_i u_i^+ + beta_i u_i^-), with u^- = min(u, 0).
struct Coupling {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Configuration shared by every module: dimension n, order s, exponent p,
/// component count m and optional couplings (empty means all ones).
struct ProblemParams {
  double n = 3.0;
  double s = 1.0;
  double p = 2.0;
  int m = 1;
  std::vector<Coupling> coupling;

  /// Throws DomainError when p <= 1, m < 1, s outside (0, 2], n <= 0, or a
  /// coupling is non-positive / of the wrong length.
  void validate() const;

  bool has_unit_coupling() const;
  Coupling coupling_of(std::size_t i) const;

  /// Homogeneity exponent 2s/(p-1) of the singular solution.
  double beta_p() const { return 2.0 * s / (p - 1.0); }
};

/// The nonlinearity f_i(u) = |u|^{p-1}(alpha_i u_i^+ + beta_i u_i^-), evaluated
/// in log domain once |u| exceeds 1e100.
Eigen::VectorXd nonlinearity(const ProblemParams& params, const Eigen::Ref<const Eigen::VectorXd>& u);

bool is_integer(double x, double tol = 1e-12);

}  // namespace lanemden
