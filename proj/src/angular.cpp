#include "lanemden/angular.hpp"

#include <cmath>
#include <string>

#include "lanemden/errors.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/gamma.hpp"
#include "lanemden/singular.hpp"
#include "lanemden/table_io.hpp"
#include "quadrature.hpp"

namespace lanemden {

AngularCoefficients angular_coefficients(int n, double p) {
  if (n < 5) throw DomainError("angular_coefficients: requires n >= 5, got n = " + std::to_string(n));
  if (!(p > 1.0)) throw DomainError("angular_coefficients: requires p > 1, got p = " + format_number(p));
  const double q = 4.0 / (p - 1.0);
  const double a = q, b = q + 2.0, c = n - 4.0 - q, d = n - 2.0 - q;
  return {q, b * c + a * d, a * b * c * d};
}

double constant_solution_check(int n, double p) {
  const auto co = angular_coefficients(n, p);
  if (!(p > sobolev_exponent(n, 2.0)))
    throw DomainError("constant_solution_check: requires p > (n+4)/(n-4), got p = " + format_number(p));
  const double amplitude = std::pow(co.beta, 1.0 / (p - 1.0));
  ProblemParams params;
  params.n = n;
  params.s = 2.0;
  params.p = p;
  const double singular = make_singular(params).amplitude;
  if (std::abs(amplitude - singular) > 1e-10 * singular)
    throw ConvergenceError("constant_solution_check: angular and singular amplitudes disagree", amplitude - singular);
  return amplitude;
}

StabilityTriple stability_triple(int n, double p) {
  const auto co = angular_coefficients(n, p);
  const double nn = n;
  return {p - 1.0, p * co.alpha - nn * (nn - 4.0) / 2.0, p * co.beta - nn * nn * (nn - 4.0) * (nn - 4.0) / 16.0};
}

StabilityPair stability_pair(int n, double p) {
  if (n < 3) throw DomainError("stability_pair: requires n >= 3, got n = " + std::to_string(n));
  if (!(p > 1.0)) throw DomainError("stability_pair: requires p > 1, got p = " + format_number(p));
  const double nn = n;
  const double b = 2.0 / (p - 1.0);
  return {p - 1.0, p * b * (nn - 2.0 - b) - (nn - 2.0) * (nn - 2.0) / 4.0};
}

void CutoffSpec::validate(double s) const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw DomainError("cutoff: epsilon must lie in (0, 1), got " + format_number(epsilon));
  if (s == 2.0 && profile == CutoffProfile::LogLinear)
    throw DomainError("cutoff: the log-linear ramp is not in H^2; use the smoothstep profile for s = 2");
}

namespace {

// Profile h on [0,1] and its first two derivatives.
struct Jet {
  double h, dh, d2h;
};

Jet profile_jet(CutoffProfile profile, double x) {
  if (profile == CutoffProfile::LogLinear) return {x, 1.0, 0.0};
  return {x * x * (3.0 - 2.0 * x), 6.0 * x * (1.0 - x), 6.0 - 12.0 * x};
}

// eta and its log-derivatives eta_t, eta_tt at t = log r.
Jet eta_jet(const CutoffSpec& cut, double t) {
  const double L = std::log(2.0);
  const double le = std::log(cut.epsilon);
  if (t <= le - L || t >= -le + L) return {0.0, 0.0, 0.0};
  if (t < le) {
    const auto j = profile_jet(cut.profile, (t - le + L) / L);
    return {j.h, j.dh / L, j.d2h / (L * L)};
  }
  if (t > -le) {
    const auto j = profile_jet(cut.profile, (-le + L - t) / L);
    return {j.h, -j.dh / L, j.d2h / (L * L)};
  }
  return {1.0, 0.0, 0.0};
}

}  // namespace

ProbeResult singular_instability_probe(int n, int s, double p, const CutoffSpec& cutoff) {
  if (s != 1 && s != 2) throw UnsupportedError("singular_instability_probe: s must be 1 or 2");
  cutoff.validate(s);
  if (!(n > 2 * s)) throw DomainError("singular_instability_probe: requires n > 2s");
  if (!(p > sobolev_exponent(n, s)))
    throw DomainError("singular_instability_probe: requires p > (n+2s)/(n-2s), got p = " + format_number(p));

  const double nn = n;
  const double gamma = (nn - 2.0 * s) / 2.0;
  const double lam = power_law_multiplier(nn, s, 2.0 * s / (p - 1.0));
  const double omega = sphere_area(nn);

  // With phi = r^{-gamma} eta and t = log r, r^{n-1} dr = r^{2 gamma + 2s} dt and every
  // power of r cancels: s = 1 leaves (r phi' r^gamma)^2 = (r eta' - gamma eta)^2,
  // s = 2 leaves (r^{gamma+2} Delta phi)^2 = (r^2 eta'' + 3 r eta' - n(n-4)/4 eta)^2.
  auto seminorm = [&](double t) {
    const auto e = eta_jet(cutoff, t);
    const double r_deta = e.dh;
    if (s == 1) {
      const double g = r_deta - gamma * e.h;
      return g * g;
    }
    const double r2_d2eta = e.d2h - e.dh;
    const double g = r2_d2eta + 3.0 * r_deta - nn * (nn - 4.0) / 4.0 * e.h;
    return g * g;
  };
  auto weight = [&](double t) {
    const double h = eta_jet(cutoff, t).h;
    return h * h;
  };

  const double L = std::log(2.0);
  const double le = std::log(cutoff.epsilon);
  const double breaks[] = {le - L, le, -le, -le + L};
  double norm = 0.0, mass = 0.0;
  for (int k = 0; k < 3; ++k) {
    norm += detail::gk_adaptive<15>(seminorm, breaks[k], breaks[k + 1], 1e-14, 10).value;
    mass += detail::gk_adaptive<15>(weight, breaks[k], breaks[k + 1], 1e-14, 10).value;
  }
  const double potential = omega * lam * mass;
  const double value = omega * norm - p * potential;
  return {value, potential, value / potential};
}

}  // namespace lanemden
