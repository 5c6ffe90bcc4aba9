#include "lanemden/energy.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "lanemden/errors.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/gamma.hpp"
#include "lanemden/table_io.hpp"
#include "quadrature.hpp"

namespace lanemden {

namespace {

using Integrand = std::function<double(const RadialSample&)>;

constexpr double kQuadTol = 1e-13;
constexpr double kDefaultStep = 1e-4;

// int_0^lam g(sample(r)) r^{n-1} dr without the sphere factor.  On the
// homogeneous core g scales like r^{core_exponent}.
double radial_integral(const RadialSolution& sol, double lam, const Integrand& g, double core_exponent) {
  if (!(lam > 0.0) || lam > sol.r_end() * (1.0 + 1e-14))
    throw std::out_of_range("radial integral: lambda = " + format_number(lam) + " outside the solution range");
  const double n = sol.params.n;
  auto weighted = [&](double r) { return r > 0.0 ? g(sample(sol, r)) * std::pow(r, n - 1.0) : 0.0; };

  double total = 0.0;
  double start = sol.grid[0];
  if (sol.core) {
    const double r0 = std::min(start, lam);
    const double e = core_exponent + n;
    if (!(e > 0.0)) throw DomainError("radial integral: homogeneous integrand is not integrable at the origin");
    total += g(sample(sol, r0)) * std::pow(r0, n) / e;
    if (lam <= start) return total;
  }
  for (Eigen::Index k = 0; k + 1 < sol.nodes(); ++k) {
    const double a = sol.grid[k];
    if (a >= lam) break;
    const double b = std::min(sol.grid[k + 1], lam);
    total += detail::gk_adaptive<15>(weighted, a, b, kQuadTol, 8).value;
  }
  return total;
}

void require_unit_coupling(const RadialSolution& sol, const char* who) {
  if (!sol.params.has_unit_coupling())
    throw UnsupportedError(std::string(who) + ": energy functionals require unit coupling coefficients");
}

void require_e1(const RadialSolution& sol) {
  if (sol.params.s != 1.0) throw DomainError("energy_E1: requires an s = 1 solution");
  require_unit_coupling(sol, "energy_E1");
}

void require_e2(const RadialSolution& sol) {
  const double n = sol.params.n;
  if (sol.params.s != 2.0) throw DomainError("energy_E2: requires an s = 2 solution");
  if (n < 5.0) throw DomainError("energy_E2: requires n >= 5");
  if (!(sol.params.p > (n + 4.0) / (n - 4.0))) throw DomainError("energy_E2: requires p > (n+4)/(n-4)");
  require_unit_coupling(sol, "energy_E2");
}

double central(const std::function<double(double)>& f, double x, double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  return (4.0 * central(f, x, 0.5 * h) - central(f, x, h)) / 3.0;
}

double e2_boundary_coefficient(double n, double q, E2Variant variant) {
  return variant == E2Variant::SumOfSquares ? 0.5 * q * (n - 2.0 - q) : q * (n - 1.0 - q);
}

double e2_interior_term(const RadialSolution& sol, double lam) {
  const double n = sol.params.n, p = sol.params.p;
  const double q = 4.0 / (p - 1.0);
  // the two parts cancel exactly on homogeneous data, so each is integrated on its own
  const double kinetic = radial_integral(sol, lam, [](const RadialSample& s) { return 0.5 * s.w.squaredNorm(); }, -2.0 * q - 4.0);
  const double potential = radial_integral(
      sol, lam, [p](const RadialSample& s) { return std::pow(s.u.norm(), p + 1.0) / (p + 1.0); }, -2.0 * q - 4.0);
  const double interior = kinetic - potential;
  return std::pow(lam, 2.0 * q + 4.0 - n) * sphere_area(n) * interior;
}

// sum_i (q u_i / lam + u_i')^2 with u'' from the second-order split u'' = w - (n-1) u'/lam.
struct WeightedBoundary {
  double value;
  double derivative;
};

WeightedBoundary e2_scaled_gradient(const RadialSolution& sol, const RadialSample& s, double lam) {
  const double n = sol.params.n;
  const double q = 4.0 / (sol.params.p - 1.0);
  const Eigen::VectorXd d2u = s.w - (n - 1.0) / lam * s.du;
  const Eigen::VectorXd v = q / lam * s.u + s.du;
  const Eigen::VectorXd dv = q / lam * s.du - q / (lam * lam) * s.u + d2u;
  return {v.squaredNorm(), 2.0 * v.dot(dv)};
}

double energy_E1_value(const RadialSolution& sol, double lam) {
  const double n = sol.params.n, p = sol.params.p;
  const double omega = sphere_area(n);
  const double beta = 2.0 / (p - 1.0);
  const double kinetic =
      radial_integral(sol, lam, [](const RadialSample& s) { return 0.5 * s.du.squaredNorm(); }, -2.0 * beta - 2.0);
  const double potential = radial_integral(
      sol, lam, [p](const RadialSample& s) { return std::pow(s.u.norm(), p + 1.0) / (p + 1.0); }, -2.0 * beta - 2.0);
  const double interior = kinetic - potential;
  const double e = 2.0 * (p + 1.0) / (p - 1.0) - n;
  const double boundary = omega * std::pow(lam, n - 1.0) * sample(sol, lam).u.squaredNorm();
  return std::pow(lam, e) * omega * interior + std::pow(lam, e - 1.0) / (p - 1.0) * boundary;
}

double energy_E2_value(const RadialSolution& sol, double lam, E2Variant variant) {
  const double n = sol.params.n, p = sol.params.p;
  const double q = 4.0 / (p - 1.0);
  const double omega = sphere_area(n);
  const double c = e2_boundary_coefficient(n, q, variant);
  const auto s = sample(sol, lam);

  const double g = s.u.squaredNorm();
  const double dg = 2.0 * s.u.dot(s.du);
  const double t2 = c * std::pow(lam, 1.0 + 2.0 * q - n) * omega * std::pow(lam, n - 1.0) * g;

  // d/dlam [lam^a int_{dB} g] = omega lam^{a+n-2} ((a+n-1) g + lam g')
  const double a3 = 2.0 * q + 2.0 - n;
  const double t3 = c * omega * std::pow(lam, a3 + n - 2.0) * ((a3 + n - 1.0) * g + lam * dg);

  const auto G = e2_scaled_gradient(sol, s, lam);
  const double a4 = 2.0 * q + 1.0 - n;
  const double t4 = 0.5 * lam * lam * lam * omega * std::pow(lam, a4 + n - 2.0) * ((a4 + n - 1.0) * G.value + lam * G.derivative);

  return e2_interior_term(sol, lam) + t2 + t3 + t4;
}

}  // namespace

double ball_integral_lp1(const RadialSolution& sol, double lam) {
  const double p = sol.params.p;
  const double beta = sol.params.beta_p();
  return sphere_area(sol.params.n) *
         radial_integral(sol, lam, [p](const RadialSample& s) { return std::pow(s.u.norm(), p + 1.0); },
                         -(p + 1.0) * beta);
}

double ball_integral_l2(const RadialSolution& sol, double lam) {
  const double beta = sol.params.beta_p();
  return sphere_area(sol.params.n) *
         radial_integral(sol, lam, [](const RadialSample& s) { return s.u.squaredNorm(); }, -2.0 * beta);
}

double energy_E1(const RadialSolution& sol, double lam) {
  require_e1(sol);
  return energy_E1_value(sol, lam);
}

double energy_E1_identity_rhs(const RadialSolution& sol, double lam) {
  require_e1(sol);
  const double n = sol.params.n, p = sol.params.p;
  const auto s = sample(sol, lam);
  const Eigen::VectorXd v = s.du + 2.0 / ((p - 1.0) * lam) * s.u;
  return std::pow(lam, -n + 2.0 * (p + 1.0) / (p - 1.0)) * sphere_area(n) * std::pow(lam, n - 1.0) * v.squaredNorm();
}

DerivativeCheck energy_E1_derivative_identity(const RadialSolution& sol, double lam, double h, bool richardson) {
  require_e1(sol);
  auto E = [&](double x) { return energy_E1_value(sol, x); };
  const double fd = richardson ? richardson_derivative(E, lam, h) : central(E, lam, h);
  const double rhs = energy_E1_identity_rhs(sol, lam);
  return {fd, rhs, std::abs(fd - rhs)};
}

double energy_E2(const RadialSolution& sol, double lam, E2Variant variant) {
  require_e2(sol);
  return energy_E2_value(sol, lam, variant);
}

E2CrossCheck energy_E2_crosscheck(const RadialSolution& sol, double lam, double h, E2Variant variant) {
  require_e2(sol);
  const double n = sol.params.n, p = sol.params.p;
  const double q = 4.0 / (p - 1.0);
  const double omega = sphere_area(n);
  const double c = e2_boundary_coefficient(n, q, variant);
  const auto s = sample(sol, lam);
  const double t2 = c * std::pow(lam, 1.0 + 2.0 * q - n) * omega * std::pow(lam, n - 1.0) * s.u.squaredNorm();

  auto bracket3 = [&](double x) {
    return std::pow(x, 2.0 * q + 2.0 - n) * omega * std::pow(x, n - 1.0) * sample(sol, x).u.squaredNorm();
  };
  auto bracket4 = [&](double x) {
    const auto sx = sample(sol, x);
    const Eigen::VectorXd v = q / x * sx.u + sx.du;
    return std::pow(x, 2.0 * q + 1.0 - n) * omega * std::pow(x, n - 1.0) * v.squaredNorm();
  };
  const double fd_value = e2_interior_term(sol, lam) + t2 + c * richardson_derivative(bracket3, lam, h) +
                          0.5 * lam * lam * lam * richardson_derivative(bracket4, lam, h);
  const double analytic = energy_E2_value(sol, lam, variant);
  return {analytic, fd_value, std::abs(analytic - fd_value) / std::max(std::abs(analytic), 1.0)};
}

double e2_monotonicity_constant(double n, double p) {
  const double q = 4.0 / (p - 1.0);
  return 2.0 * (n * (q + 1.0) - q * q - 4.0 * q - 2.0);
}

DerivativeBound energy_E2_derivative_bound(const RadialSolution& sol, double lam, double h) {
  require_e2(sol);
  const double n = sol.params.n, p = sol.params.p;
  const double q = 4.0 / (p - 1.0);
  auto E = [&](double x) { return energy_E2_value(sol, x, E2Variant::SumOfSquares); };
  const double fd = richardson_derivative(E, lam, h);
  const auto s = sample(sol, lam);
  const Eigen::VectorXd v = q / lam * s.u + s.du;
  const double integrand = sphere_area(n) * std::pow(lam, n - 1.0) * std::pow(lam, 2.0 * q + 2.0 - n) * v.squaredNorm();
  return {fd, integrand, e2_monotonicity_constant(n, p)};
}

EnergyCurve energy_scan(const RadialSolution& sol, const std::vector<double>& lambda_grid, double s) {
  if (s != 1.0 && s != 2.0) throw UnsupportedError("energy_scan: s must be 1 or 2");
  if (s != sol.params.s) throw DomainError("energy_scan: s does not match the solution");
  EnergyCurve curve;
  for (double lam : lambda_grid) {
    const double h = kDefaultStep * lam;
    curve.lambdas.push_back(lam);
    if (s == 1.0) {
      const auto check = energy_E1_derivative_identity(sol, lam, h);
      curve.values.push_back(energy_E1(sol, lam));
      curve.fd_derivative.push_back(check.fd);
      curve.identity_rhs.push_back(check.rhs);
      curve.residuals.push_back(check.residual);
    } else {
      const auto bound = energy_E2_derivative_bound(sol, lam, h);
      const double lower = bound.constant * bound.integrand;
      curve.values.push_back(energy_E2(sol, lam));
      curve.fd_derivative.push_back(bound.fd);
      curve.identity_rhs.push_back(lower);
      curve.residuals.push_back(bound.fd - lower);
    }
  }
  for (std::size_t k = 0; k + 1 < curve.values.size(); ++k)
    if (curve.values[k + 1] < curve.values[k] - 1e-8 * (1.0 + std::abs(curve.values[k]))) curve.violations.push_back(k);
  return curve;
}

void write_energy_csv(std::ostream& out, const EnergyCurve& curve) {
  CsvWriter csv(out, {"lambda", "E", "dE_fd", "identity_rhs", "residual"});
  for (std::size_t k = 0; k < curve.lambdas.size(); ++k)
    csv.row({curve.lambdas[k], curve.values[k], curve.fd_derivative[k], curve.identity_rhs[k], curve.residuals[k]});
}

nlohmann::json energy_json(const EnergyCurve& curve) {
  nlohmann::json j;
  j["lambda"] = json_array(curve.lambdas);
  j["E"] = json_array(curve.values);
  j["dE_fd"] = json_array(curve.fd_derivative);
  j["identity_rhs"] = json_array(curve.identity_rhs);
  j["residual"] = json_array(curve.residuals);
  j["violations"] = curve.violations;
  return j;
}

double scale_invariance_check(const RadialSolution& sol, double lam, double r, double s) {
  if (s != sol.params.s) throw DomainError("scale_invariance_check: s does not match the solution");
  const auto scaled = blow_down(sol, lam);
  double lhs, rhs;
  if (s == 1.0) {
    lhs = energy_E1(sol, r * lam);
    rhs = energy_E1(scaled, r);
  } else if (s == 2.0) {
    lhs = energy_E2(sol, r * lam);
    rhs = energy_E2(scaled, r);
  } else {
    throw UnsupportedError("scale_invariance_check: s must be 1 or 2");
  }
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0);
}

GrowthFit growth_slope(const RadialSolution& sol, const std::vector<double>& R_grid, GrowthKind which) {
  if (R_grid.size() < 4) throw DomainError("growth_slope: need at least 4 radii");
  if (which == GrowthKind::GradSq) throw UnsupportedError("growth_slope: only Lp1 and L2 are fitted");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(R_grid.size());
  for (double R : R_grid) {
    const double value = which == GrowthKind::Lp1 ? ball_integral_lp1(sol, R) : ball_integral_l2(sol, R);
    if (!(value > 0.0) || !std::isfinite(value)) return {std::nan(""), true};
    const double x = std::log(R), y = std::log(value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return {(k * sxy - sx * sy) / (k * sxx - sx * sx), false};
}

}  // namespace lanemden
