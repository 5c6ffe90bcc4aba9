#include "lanemden/params.hpp"

#include <cmath>
#include <string>

#include "lanemden/errors.hpp"

namespace lanemden {

void ProblemParams::validate() const {
  if (!(std::isfinite(n) && n > 0.0)) throw DomainError("n must be a positive finite number");
  if (!(s > 0.0 && s <= 2.0)) throw DomainError("s must lie in (0, 2]");
  if (!(std::isfinite(p) && p > 1.0)) throw DomainError("p must be a finite number > 1");
  if (m < 1) throw DomainError("m must be >= 1");
  if (!coupling.empty()) {
    if (coupling.size() != static_cast<std::size_t>(m))
      throw DomainError("coupling list must have exactly m entries");
    for (const auto& c : coupling)
      if (!(c.alpha > 0.0 && c.beta > 0.0)) throw DomainError("coupling coefficients must be positive");
  }
}

bool ProblemParams::has_unit_coupling() const {
  for (const auto& c : coupling)
    if (c.alpha != 1.0 || c.beta != 1.0) return false;
  return true;
}

Coupling ProblemParams::coupling_of(std::size_t i) const {
  return coupling.empty() ? Coupling{} : coupling.at(i);
}

Eigen::VectorXd nonlinearity(const ProblemParams& params, const Eigen::Ref<const Eigen::VectorXd>& u) {
  const double norm = u.norm();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(u.size());
  if (norm == 0.0) return f;
  const bool unit = params.has_unit_coupling();
  if (norm > 1e100) {
    const double log_weight = (params.p - 1.0) * std::log(norm);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (u[i] == 0.0) continue;
      const auto c = params.coupling_of(static_cast<std::size_t>(i));
      const double k = unit ? 1.0 : (u[i] > 0.0 ? c.alpha : c.beta);
      f[i] = std::copysign(std::exp(log_weight + std::log(k * std::abs(u[i]))), u[i]);
    }
    return f;
  }
  const double weight = std::pow(norm, params.p - 1.0);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const auto c = params.coupling_of(static_cast<std::size_t>(i));
    const double k = unit ? 1.0 : (u[i] > 0.0 ? c.alpha : c.beta);
    f[i] = weight * k * u[i];
  }
  return f;
}

bool is_integer(double x, double tol) { return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x)); }

}  // namespace lanemden
