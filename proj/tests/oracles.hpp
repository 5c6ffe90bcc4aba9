#pragma once

// Independent reference values: 50-digit Gamma, closed forms.

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lanemden/params.hpp"

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline mp tgamma(mp x) { return boost::math::tgamma(x); }

inline double lgamma(double x) { return static_cast<double>(boost::multiprecision::log(tgamma(mp(x)))); }

inline double multiplier(double n, double s, double beta) {
  const mp N(n), S(s), B(beta);
  const mp v = boost::multiprecision::pow(mp(2), 2 * S) * tgamma((B + 2 * S) / 2) * tgamma((N - B) / 2) /
               (tgamma(B / 2) * tgamma((N - B - 2 * S) / 2));
  return static_cast<double>(v);
}

inline double hardy(double n, double s) {
  const mp N(n), S(s);
  const mp g = tgamma((N + 2 * S) / 4) / tgamma((N - 2 * S) / 4);
  return static_cast<double>(boost::multiprecision::pow(mp(2), 2 * S) * g * g);
}

inline double bubble(double r) { return std::pow(3.0, 0.25) / std::sqrt(1.0 + r * r); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline lanemden::ProblemParams params(double n, double s, double p, int m = 1) {
  lanemden::ProblemParams pp;
  pp.n = n;
  pp.s = s;
  pp.p = p;
  pp.m = m;
  return pp;
}

}  // namespace oracle
