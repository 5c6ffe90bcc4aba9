#include <doctest.h>

#include <cmath>

#include <boost/math/constants/constants.hpp>

#include "lanemden/errors.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/gamma.hpp"
#include "lanemden/singular.hpp"
#include "oracles.hpp"

using namespace lanemden;
using oracle::params;
using oracle::rel;

TEST_CASE("make_singular amplitudes") {
  const auto a = make_singular(params(5, 1, 3));
  CHECK(a.amplitude == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(a.beta == 1.0);
  CHECK(a.direction.size() == 1);
  const auto b = make_singular(params(13, 2, 2));
  CHECK(b.amplitude == doctest::Approx(840.0).epsilon(1e-13));
  CHECK_THROWS_AS(make_singular(params(3, 1, 5)), DomainError);
  CHECK_THROWS_AS(make_singular(params(3, 1, 4)), DomainError);
}

TEST_CASE("make_singular direction") {
  Eigen::VectorXd d(2);
  d << 0.6, 0.8;
  const auto sol = make_singular(params(5, 1, 3, 2), d);
  CHECK(sol.value(1.0)[1] == doctest::Approx(0.8 * std::sqrt(2.0)));
  CHECK(make_singular(params(5, 1, 3, 2)).direction[0] == 1.0);
  Eigen::VectorXd bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(make_singular(params(5, 1, 3, 2), bad), DomainError);
  CHECK_THROWS_AS(make_singular(params(5, 1, 3, 2), Eigen::VectorXd::Ones(3) / std::sqrt(3.0)), DomainError);
}

TEST_CASE("fractional singular amplitude") {
  const auto sol = make_singular(params(3, 0.5, 3));
  CHECK(rel(std::pow(sol.amplitude, 2.0), oracle::multiplier(3, 0.5, 0.5)) < 1e-12);
}

TEST_CASE("residual vanishes") {
  const auto a = make_singular(params(5, 1, 3));
  CHECK(residual_local(a, 1.0).norm() < 1e-12);
  const auto b = make_singular(params(13, 2, 2));
  const double scale = std::pow(b.value(2.0).norm(), 2.0);
  CHECK(residual_local(b, 2.0).norm() < 1e-12 * scale);
  for (double r : {1e-3, 0.1, 3.0, 70.0}) {
    const double sa = std::pow(a.value(r).norm(), 3.0);
    CHECK(residual_local(a, r).norm() <= 1e-10 * sa);
  }
  CHECK_THROWS_AS(residual_local(make_singular(params(3, 0.5, 3)), 1.0), UnsupportedError);
  CHECK_THROWS_AS(residual_local(a, 0.0), DomainError);
}

TEST_CASE("perturbed amplitude leaves a sign-definite residual") {
  auto sol = make_singular(params(5, 1, 3));
  sol.amplitude *= 1.01;
  // -Delta(cA r^-1) - (cA)^3 r^-3 = cA(2 - 2c^2) r^-3 < 0 for c > 1
  for (double r : {0.5, 1.0, 2.0}) {
    const double res = residual_local(sol, r)[0];
    CHECK(res < 0.0);
    const double expected = 1.01 * std::sqrt(2.0) * (2.0 - 2.0 * 1.01 * 1.01) / (r * r * r);
    CHECK(rel(res, expected) < 1e-10);
  }
}

TEST_CASE("derivative of the profile") {
  const auto sol = make_singular(params(5, 1, 3));
  CHECK(sol.derivative(2.0, 1)[0] == doctest::Approx(-std::sqrt(2.0) / 4.0));
  CHECK(sol.derivative(2.0, 2)[0] == doctest::Approx(2.0 * std::sqrt(2.0) / 8.0));
  CHECK(sol.derivative(2.0, 0)[0] == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("is_singular_stable examples") {
  CHECK(is_singular_stable(params(11, 1, 7)).stable);
  CHECK_FALSE(is_singular_stable(params(11, 1, 6)).stable);
  CHECK(is_singular_stable(params(13, 2, 29)).stable);
  CHECK_FALSE(is_singular_stable(params(13, 2, 28)).stable);
  const auto v = is_singular_stable(params(11, 1, 7));
  CHECK(v.margin == doctest::Approx(hardy_constant(11, 1) - 7.0 * power_law_multiplier(11, 1, 1.0 / 3.0)));
  CHECK_THROWS_AS(is_singular_stable(params(3, 1, 4)), DomainError);
}

TEST_CASE("stability is the negation of the condition") {
  for (double p : {2.0, 5.0, 6.9, 7.5, 20.0}) {
    const auto pp = params(11, 1, p);
    CHECK(is_singular_stable(pp).stable == !fractional_condition(pp).holds);
    CHECK(is_singular_stable(pp).margin == doctest::Approx(-fractional_condition(pp).margin));
  }
}

TEST_CASE("growth integrals") {
  const double pi = boost::math::constants::pi<double>();
  const double w4 = 8.0 * pi * pi / 3.0;
  const auto sol = make_singular(params(5, 1, 3));
  CHECK(growth_exponent(sol, GrowthKind::Lp1) == doctest::Approx(1.0));
  CHECK(growth_exponent(sol, GrowthKind::L2) == doctest::Approx(3.0));
  CHECK(growth_exponent(sol, GrowthKind::GradSq) == doctest::Approx(1.0));
  for (double R : {0.5, 1.0, 7.0}) {
    CHECK(rel(growth_integral(sol, R, GrowthKind::Lp1), 4.0 * w4 * R) < 1e-13);
    CHECK(rel(growth_integral(sol, R, GrowthKind::L2), 2.0 * w4 * R * R * R / 3.0) < 1e-13);
    CHECK(rel(growth_integral(sol, 2.0 * R, GrowthKind::L2), 8.0 * growth_integral(sol, R, GrowthKind::L2)) < 1e-13);
  }
  CHECK_THROWS_AS(growth_integral(sol, 0.0, GrowthKind::Lp1), DomainError);
  // n = 4, p = 2: |u|^{p+1} ~ r^{-6}, not integrable against r^3
  CHECK_THROWS_AS(growth_integral(make_singular(params(5, 1, 2)), 1.0, GrowthKind::Lp1), DomainError);
}
