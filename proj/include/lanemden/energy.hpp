#pragma once

#include <ostream>
#include <vector>

#include <json.hpp>

#include "lanemden/radial.hpp"
#include "lanemden/singular.hpp"

namespace lanemden {

// Monotonicity functionals along radial solutions centred at the origin.
// Ball integrals reduce to omega_{n-1} int_0^lam g(r) r^{n-1} dr and sphere
// integrals to omega_{n-1} lam^{n-1} g(lam).

/// Coefficient of the two |u|^2 boundary groups of E_2.
enum class E2Variant {
  SumOfSquares,  ///< (2/(p-1)) (n - 2 - 4/(p-1)): dE_2/dlam is a sum of squares
  AsPrinted,     ///< (4/(p-1)) (n - 1 - 4/(p-1)); not monotone in general
};

/// omega_{n-1} int_0^lam g(r) r^{n-1} dr by Gauss-Kronrod panels aligned with the
/// solution grid; the homogeneous core (if any) is integrated in closed form.
double ball_integral_lp1(const RadialSolution& sol, double lam);
double ball_integral_l2(const RadialSolution& sol, double lam);

/// Second-order functional E_1 (requires s = 1 and unit coupling).
double energy_E1(const RadialSolution& sol, double lam);

struct DerivativeCheck {
  double fd;        ///< finite-difference dE/dlam
  double rhs;       ///< boundary-integral right-hand side
  double residual;  ///< |fd - rhs|
};

/// Central difference with one Richardson level (richardson = false gives the
/// plain central difference, used for convergence-order measurements).
DerivativeCheck energy_E1_derivative_identity(const RadialSolution& sol, double lam, double h, bool richardson = true);

/// Boundary integrand of the E_1 derivative formula at lam.
double energy_E1_identity_rhs(const RadialSolution& sol, double lam);

/// Fourth-order functional E_2 (requires s = 2, n >= 5, p > (n+4)/(n-4)).
/// The d/dlam bracket terms are expanded analytically; tangential groups are
/// identically zero for radial data and never added.
double energy_E2(const RadialSolution& sol, double lam, E2Variant variant = E2Variant::SumOfSquares);

struct E2CrossCheck {
  double analytic;           ///< E_2 with analytic bracket derivatives
  double finite_difference;  ///< E_2 with bracket derivatives by central differences of step h
  double relative_difference;
};

E2CrossCheck energy_E2_crosscheck(const RadialSolution& sol, double lam, double h,
                                  E2Variant variant = E2Variant::SumOfSquares);

/// kappa(n, p) = 2 (n (q+1) - q^2 - 4q - 2), q = 4/(p-1): the constant with
/// dE_2/dlam >= kappa * (boundary integrand) for the SumOfSquares variant.
double e2_monotonicity_constant(double n, double p);

struct DerivativeBound {
  double fd;                  ///< finite-difference dE_2/dlam (Richardson)
  double integrand;           ///< omega lam^{n-1} lam^{8/(p-1)+2-n} sum (4u/((p-1)lam) + u')^2
  double constant;            ///< e2_monotonicity_constant
};

DerivativeBound energy_E2_derivative_bound(const RadialSolution& sol, double lam, double h);

/// Sampled E(lam) with finite-difference derivative, identity right-hand side
/// (s = 1) or lower bound kappa * integrand (s = 2), and residuals.
struct EnergyCurve {
  std::vector<double> lambdas;
  std::vector<double> values;
  std::vector<double> fd_derivative;
  std::vector<double> identity_rhs;
  std::vector<double> residuals;       ///< |fd - rhs| (s = 1) or fd - lower bound (s = 2)
  std::vector<std::size_t> violations; ///< k with E(lam_{k+1}) < E(lam_k) - 1e-8 (1 + |E(lam_k)|)
};

/// Finite differences use h = 1e-4 lam with one Richardson level.
EnergyCurve energy_scan(const RadialSolution& sol, const std::vector<double>& lambda_grid, double s);

void write_energy_csv(std::ostream& out, const EnergyCurve& curve);
nlohmann::json energy_json(const EnergyCurve& curve);

/// |E(u, r lam) - E(u^lam, r)| / max(|E(u, r lam)|, 1).
double scale_invariance_check(const RadialSolution& sol, double lam, double r, double s);

struct GrowthFit {
  double slope;
  bool degenerate;  ///< some integral vanished; slope is NaN
};

/// Least-squares slope of log int_{B_R} vs log R (Lp1: |u|^{p+1}, L2: |u|^2).
GrowthFit growth_slope(const RadialSolution& sol, const std::vector<double>& R_grid, GrowthKind which);

}  // namespace lanemden
