#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "lanemden/params.hpp"

namespace lanemden {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (n+2s)/(n-2s) when n > 2s, +infinity otherwise.
double sobolev_exponent(double n, double s);

/// Closed-form Joseph-Lundgren type exponent for s = 1 or s = 2 (+infinity
/// below the dimension threshold).  Other s throw UnsupportedError.
double jl_exponent_closed_form(double n, double s);

/// Root p* > p_S of p * lambda(n, s, 2s/(p-1)) = Lambda_{n,s}: the exponent above
/// which the singular solution is stable.  +infinity when no sign change is
/// found below 1e6.  Requires n > 2s.
double jl_exponent_root(double n, double s);

struct ConditionResult {
  bool holds;     ///< p * lambda(beta_p) > Lambda_{n,s}
  double margin;  ///< p * lambda(beta_p) - Lambda_{n,s}
};

/// Gamma-ratio condition for the Liouville theorem at supercritical p.
/// Throws DomainError when beta_p = 2s/(p-1) is outside (0, n - 2s).
ConditionResult fractional_condition(const ProblemParams& params);

enum class RegimeTag { SubcriticalTrivial, CriticalFiniteEnergy, SupercriticalTrivial, Unclassified };

std::string_view to_string(RegimeTag tag);

struct Regime {
  RegimeTag tag;
  double margin;  ///< signed p*lambda(beta_p) - Lambda for supercritical p, 0 otherwise
};

/// Classification of (n, s, p).  Equality p = p_S (relative 1e-12) is
/// CriticalFiniteEnergy; a tie in the Gamma condition is Unclassified.
Regime classify(const ProblemParams& params);

/// Inclusive linearly spaced range [start, stop] with count >= 2 points.
struct Range {
  double start;
  double stop;
  int count;
  double at(int i) const;
  double step() const { return (stop - start) / (count - 1); }
};

struct PhaseDiagram {
  std::vector<double> n_values;  ///< columns
  std::vector<double> p_values;  ///< rows
  double s;
  std::vector<Regime> cells;     ///< row-major: cells[row * n_values.size() + col]
  const Regime& at(std::size_t row, std::size_t col) const { return cells[row * n_values.size() + col]; }
};

/// Regimes sampled on the grid points of n_range x p_range.  Requires every n > 2s.
PhaseDiagram phase_diagram(const Range& n_range, const Range& p_range, double s);

}  // namespace lanemden
