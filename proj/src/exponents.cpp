#include "lanemden/exponents.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

#include "lanemden/errors.hpp"
#include "lanemden/gamma.hpp"

namespace lanemden {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kRootCeiling = 1e6;

// g(p) = p * lambda(n, s, 2s/(p-1)) - Lambda_{n,s}; positive just above p_S.
double stability_gap(double n, double s, double p, double hardy) {
  return p * power_law_multiplier(n, s, 2.0 * s / (p - 1.0)) - hardy;
}

}  // namespace

double sobolev_exponent(double n, double s) {
  if (n > 2.0 * s) return (n + 2.0 * s) / (n - 2.0 * s);
  return kInfinity;
}

double jl_exponent_closed_form(double n, double s) {
  if (s == 1.0) {
    if (n <= 10.0) return kInfinity;
    return ((n - 2.0) * (n - 2.0) - 4.0 * n + 8.0 * std::sqrt(n - 1.0)) / ((n - 2.0) * (n - 10.0));
  }
  if (s == 2.0) {
    if (n <= 12.0) return kInfinity;
    const double root = std::sqrt(n * n + 4.0 - n * std::sqrt(n * n - 8.0 * n + 32.0));
    const double denom = n - 6.0 - root;
    // Non-integer n slightly above 12 leaves the denominator non-positive: no finite threshold.
    if (denom <= 0.0) return kInfinity;
    return (n + 2.0 - root) / denom;
  }
  throw UnsupportedError("jl_exponent_closed_form: only s = 1 and s = 2 have closed forms; use jl_exponent_root");
}

double jl_exponent_root(double n, double s) {
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("jl_exponent_root: s must lie in (0, 2]");
  if (!(n > 2.0 * s)) throw DomainError("jl_exponent_root: requires n > 2s");
  const double hardy = hardy_constant(n, s);
  const double p_s = sobolev_exponent(n, s);
  const double lo_end = p_s * (1.0 + 1e-9);

  // Log-spaced scan in p - 1 for the first sign change of the gap.
  constexpr int kScan = 400;
  const double log_lo = std::log(lo_end - 1.0);
  const double log_hi = std::log(kRootCeiling - 1.0);
  double a = lo_end;
  double ga = stability_gap(n, s, a, hardy);
  for (int k = 1; k <= kScan; ++k) {
    const double b = 1.0 + std::exp(log_lo + (log_hi - log_lo) * k / kScan);
    const double gb = stability_gap(n, s, b, hardy);
    if ((ga > 0.0) != (gb > 0.0)) {
      std::uintmax_t iterations = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(50);
      auto f = [&](double p) { return stability_gap(n, s, p, hardy); };
      const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, ga, gb, tol, iterations);
      return 0.5 * (lo + hi);
    }
    a = b;
    ga = gb;
  }
  return kInfinity;
}

ConditionResult fractional_condition(const ProblemParams& params) {
  params.validate();
  const double lambda = power_law_multiplier(params.n, params.s, params.beta_p());
  const double margin = params.p * lambda - hardy_constant(params.n, params.s);
  return {margin > 0.0, margin};
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::SubcriticalTrivial: return "SubcriticalTrivial";
    case RegimeTag::CriticalFiniteEnergy: return "CriticalFiniteEnergy";
    case RegimeTag::SupercriticalTrivial: return "SupercriticalTrivial";
    case RegimeTag::Unclassified: return "Unclassified";
  }
  return "?";
}

Regime classify(const ProblemParams& params) {
  params.validate();
  if (!(params.n > 2.0 * params.s)) throw DomainError("classify: requires n > 2s");
  const double p_s = sobolev_exponent(params.n, params.s);
  if (std::abs(params.p - p_s) <= kTieTolerance * p_s) return {RegimeTag::CriticalFiniteEnergy, 0.0};
  if (params.p < p_s) return {RegimeTag::SubcriticalTrivial, 0.0};
  const double hardy = hardy_constant(params.n, params.s);
  const double margin = fractional_condition(params).margin;
  if (std::abs(margin) <= kTieTolerance * hardy) return {RegimeTag::Unclassified, 0.0};
  return {margin > 0.0 ? RegimeTag::SupercriticalTrivial : RegimeTag::Unclassified, margin};
}

double Range::at(int i) const {
  if (i == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

PhaseDiagram phase_diagram(const Range& n_range, const Range& p_range, double s) {
  if (n_range.count < 2 || p_range.count < 2) throw DomainError("phase_diagram: resolution must be >= 2 per axis");
  PhaseDiagram out;
  out.s = s;
  for (int i = 0; i < n_range.count; ++i) out.n_values.push_back(n_range.at(i));
  for (int j = 0; j < p_range.count; ++j) out.p_values.push_back(p_range.at(j));
  out.cells.reserve(out.n_values.size() * out.p_values.size());
  for (double p : out.p_values)
    for (double n : out.n_values) out.cells.push_back(classify(ProblemParams{n, s, p, 1, {}}));
  return out;
}

}  // namespace lanemden
