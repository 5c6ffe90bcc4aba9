#pragma once

#include <optional>
#include <ostream>

#include <Eigen/Dense>

#include "lanemden/params.hpp"
#include "lanemden/singular.hpp"

namespace lanemden {

/// Initial data and integrator settings for the radial shooting problem.
struct ShootingConfig {
  Eigen::VectorXd init_u;     ///< u_i(0)
  Eigen::VectorXd init_w;     ///< Delta u_i(0), s = 2 only (empty means zero)
  double r_max = 10.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-20;
  double start_radius = 0.0;  ///< series hand-off radius; 0 selects 1e-6 * r_max
  double max_step = 0.0;      ///< integrator step cap; 0 selects r_max / 500

  void validate(const ProblemParams& params) const;
};

/// Closed-form continuation u = amplitude * r^{-beta} below the first grid node
/// (used for sampled homogeneous solutions).
struct HomogeneousCore {
  Eigen::VectorXd amplitude;
  double beta;
};

/// Dense-output radial trajectory.  Rows are grid nodes, columns components.
/// For s = 2 the w block holds w_i = Delta u_i.  Second and third derivatives at
/// the nodes come from the ODE and feed a septic Hermite interpolant.
struct RadialSolution {
  ProblemParams params;
  Eigen::VectorXd grid;
  Eigen::MatrixXd u, du, d2u, d3u;
  Eigen::MatrixXd w, dw, d2w, d3w;
  /// u and w minus a fixed reference (their values at the origin for shooting,
  /// zero for sampled homogeneous solutions), so node differences keep full
  /// precision where the profile is nearly flat.
  Eigen::MatrixXd u_shift, w_shift;
  std::optional<double> blowup_radius;
  std::optional<HomogeneousCore> core;
  static constexpr int interpolation_order = 7;

  bool fourth_order() const { return params.s == 2.0; }
  Eigen::Index nodes() const { return grid.size(); }
  double r_end() const { return grid[grid.size() - 1]; }
  /// Smallest radius accepted by sample(): 0 for regular solutions, any r > 0 with a core.
  double r_begin() const { return core ? 0.0 : grid[0]; }
};

struct RadialSample {
  Eigen::VectorXd u, du, d2u;
  Eigen::VectorXd w, dw, d2w;  ///< empty for s = 1
};

/// Shoots -Delta u = f(u) (s = 1) or Delta^2 u = f(u) (s = 2) from regular
/// data at the origin.  Stops early (blowup_radius set) once |u| or |w|
/// exceeds 1e12; throws ConvergenceError on step-size underflow.
RadialSolution solve_radial(const ProblemParams& params, const ShootingConfig& cfg);

/// u^lam(r) = lam^{2s/(p-1)} u(lam r) on [0, r_end / lam].
RadialSolution blow_down(const RadialSolution& sol, double lam);

/// Interpolated values at r; exact at nodes.  Throws std::out_of_range.
RadialSample sample(const RadialSolution& sol, double r);

/// Exact samples of a singular solution on a log-spaced grid [r_min, r_max],
/// with the closed-form core attached below r_min.
RadialSolution sample_singular(const SingularSolution& sol, double r_min, double r_max, int count);

/// ODE residual of the interpolant at r > 0: u'' + (n-1)u'/r + f(u) for s = 1,
/// and the stacked pair (u'' + (n-1)u'/r - w, w'' + (n-1)w'/r - f(u)) for s = 2.
Eigen::VectorXd ode_residual(const RadialSolution& sol, double r);

/// Largest component of |ode_residual| divided by the sum of the magnitudes of
/// the terms it balances (0 where all of them vanish).  Invariant under blow_down.
double relative_ode_residual(const RadialSolution& sol, double r);

/// CSV with columns r, u_1..u_m, du_1..du_m [, w_1..w_m, dw_1..dw_m].
void write_trajectory_csv(std::ostream& out, const RadialSolution& sol);

}  // namespace lanemden
