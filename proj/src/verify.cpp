#include "lanemden/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include <boost/math/constants/constants.hpp>

#include "lanemden/angular.hpp"
#include "lanemden/energy.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/fractional.hpp"
#include "lanemden/gamma.hpp"
#include "lanemden/radial.hpp"
#include "lanemden/singular.hpp"

namespace lanemden {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ProblemParams make_params(double n, double s, double p) {
  ProblemParams params;
  params.n = n;
  params.s = s;
  params.p = p;
  return params;
}

// max deviation below tol
void bounded(VerifyReport& r, const std::string& name, const std::function<double()>& measure, double tol) {
  double value;
  try {
    value = measure();
  } catch (const std::exception&) {
    value = std::nan("");
  }
  r.checks.push_back({name, value <= tol, value, tol});
}

}  // namespace

VerifyReport run_verify() {
  VerifyReport r;
  const double pi = boost::math::constants::pi<double>();

  bounded(r, "multiplier_s1_identity", [] {
    double worst = 0.0;
    for (int n = 3; n <= 30; ++n)
      for (int k = 1; k < 10; ++k) {
        const double b = (n - 2.0) * k / 10.0;
        worst = std::max(worst, rel(power_law_multiplier(n, 1.0, b), b * (n - 2.0 - b)));
      }
    return worst;
  }, 1e-12);

  bounded(r, "multiplier_s2_identity", [] {
    double worst = 0.0;
    for (int n = 5; n <= 30; ++n)
      for (int k = 1; k < 10; ++k) {
        const double b = (n - 4.0) * k / 10.0;
        worst = std::max(worst, rel(power_law_multiplier(n, 2.0, b), b * (b + 2.0) * (n - b - 2.0) * (n - b - 4.0)));
      }
    return worst;
  }, 1e-12);

  bounded(r, "hardy_s2_closed_form", [] {
    double worst = 0.0;
    for (int n = 5; n <= 30; ++n) worst = std::max(worst, rel(hardy_constant(n, 2.0), n * n * (n - 4.0) * (n - 4.0) / 16.0));
    return worst;
  }, 1e-12);

  bounded(r, "jl_root_vs_closed_form_s1", [] {
    double worst = 0.0;
    for (int n = 11; n <= 40; ++n) worst = std::max(worst, rel(jl_exponent_root(n, 1.0), jl_exponent_closed_form(n, 1.0)));
    return worst;
  }, 1e-9);

  bounded(r, "jl_root_vs_closed_form_s2", [] {
    double worst = 0.0;
    for (int n = 13; n <= 40; ++n) worst = std::max(worst, rel(jl_exponent_root(n, 2.0), jl_exponent_closed_form(n, 2.0)));
    return worst;
  }, 1e-9);

  bounded(r, "bubble_shooting", [] {
    ShootingConfig cfg;
    cfg.init_u = Eigen::VectorXd::Constant(1, std::pow(3.0, 0.25));
    cfg.r_max = 10.0;
    const auto sol = solve_radial(make_params(3, 1, 5), cfg);
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double x = 10.0 * k / 1000.0;
      worst = std::max(worst, std::abs(sample(sol, x).u[0] - std::pow(3.0, 0.25) / std::sqrt(1.0 + x * x)));
    }
    return worst;
  }, 1e-6);

  bounded(r, "e1_constant_on_singular", [pi] {
    const auto sol = sample_singular(make_singular(make_params(5, 1, 3)), 1e-3, 25.0, 4000);
    double worst = 0.0;
    for (double lam : {0.5, 2.0, 8.0, 20.0}) worst = std::max(worst, rel(energy_E1(sol, lam), 8.0 * pi * pi / 3.0));
    return worst;
  }, 1e-6);

  bounded(r, "e1_identity_on_bubble", [] {
    ShootingConfig cfg;
    cfg.init_u = Eigen::VectorXd::Constant(1, std::pow(3.0, 0.25));
    cfg.r_max = 10.0;
    const auto sol = solve_radial(make_params(3, 1, 5), cfg);
    double worst = 0.0;
    for (double lam : {0.5, 1.0, 4.0, 8.0}) worst = std::max(worst, energy_E1_derivative_identity(sol, lam, 1e-3 * lam).residual);
    return worst;
  }, 1e-4);

  bounded(r, "e2_constant_on_singular", [] {
    const auto sol = sample_singular(make_singular(make_params(13, 2, 2)), 1e-3, 12.0, 4000);
    const double ref = energy_E2(sol, 1.0);
    double worst = 0.0;
    for (double lam : {2.0, 5.0, 10.0}) worst = std::max(worst, rel(energy_E2(sol, lam), ref));
    return worst;
  }, 1e-6);

  bounded(r, "angular_beta_identity", [] {
    double worst = 0.0;
    for (int n = 5; n <= 30; ++n)
      for (double p : {1.5, 2.0, 3.0, 7.0}) {
        const auto co = angular_coefficients(n, p);
        if (co.q < n - 4.0) worst = std::max(worst, rel(co.beta, power_law_multiplier(n, 2.0, co.q)));
      }
    return worst;
  }, 1e-12);

  bounded(r, "stability_triple_13_2", [] {
    const auto t = stability_triple(13, 2.0);
    return std::abs(t.c1 - 1.0) + std::abs(t.c2 - 57.5) + std::abs(t.c3 - 824.4375);
  }, 0.0);

  bounded(r, "kernel_quarter_pi", [pi] { return std::abs(kernel_K({3.0, 0.5, 0.0, 0.0, {}}) - pi / 4.0); }, 1e-10);

  bounded(r, "pv_constant_n3_s05", [] {
    return rel(A_constant_quadrature(3, 0.5, 3.0), power_law_multiplier(3.0, 0.5, 0.5));
  }, 1e-3);

  bounded(r, "pv_hardy_n3_s05", [pi] { return rel(hardy_integral_quadrature(3, 0.5), 2.0 / pi); }, 1e-3);

  bounded(r, "probe_sign_agreement", [] {
    const std::pair<int, double> grid[] = {{11, 5.0}, {11, 10.0}, {15, 1.8}, {15, 3.0}};
    double mismatches = 0.0;
    for (auto [n, p] : grid) {
      const bool stable = is_singular_stable(make_params(n, 1, p)).stable;
      const double q = singular_instability_probe(n, 1, p, {1e-3, CutoffProfile::LogSmoothstep}).value;
      if ((q > 0.0) != stable) mismatches += 1.0;
    }
    return mismatches;
  }, 0.0);

  bounded(r, "classify_remark_s1_p3", [] {
    double wrong = 0.0;
    auto expect = [&](int n, RegimeTag tag) {
      auto params = make_params(n, 1, 3);
      params.m = 2;
      if (classify(params).tag != tag) wrong += 1.0;
    };
    expect(4, RegimeTag::CriticalFiniteEnergy);
    for (int n = 5; n <= 12; ++n) expect(n, RegimeTag::SupercriticalTrivial);
    for (int n = 13; n <= 20; ++n) expect(n, RegimeTag::Unclassified);
    return wrong;
  }, 0.0);

  return r;
}

void write_verify_report(std::ostream& out, const VerifyReport& report) {
  char line[256];
  int passed = 0;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-4s  %-28s  %-12.4e  %.1e\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value,
                  c.tolerance);
    out << line;
    passed += c.passed ? 1 : 0;
  }
  out << passed << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace lanemden
