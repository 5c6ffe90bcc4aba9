#include <doctest.h>

#include <cmath>

#include <boost/math/constants/constants.hpp>

#include "lanemden/errors.hpp"
#include "lanemden/gamma.hpp"
#include "oracles.hpp"

using namespace lanemden;
using oracle::rel;

namespace {
const double pi = boost::math::constants::pi<double>();
}

TEST_CASE("log_gamma known values") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-15));
  CHECK(log_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-15));
}

TEST_CASE("log_gamma against 50-digit oracle") {
  for (double lx = -6.0; lx <= 3.0; lx += 0.05) {
    const double x = std::pow(10.0, lx);
    const double ref = oracle::lgamma(x);
    CAPTURE(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-13 * std::max(std::abs(ref), 1.0));
  }
}

TEST_CASE("log_gamma rejects non-positive input") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(log_gamma(INFINITY), DomainError);
}

TEST_CASE("gamma_fn") {
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(pi)).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-3.0), DomainError);
}

TEST_CASE("sphere_area") {
  CHECK(sphere_area(2.0) == doctest::Approx(2.0 * pi).epsilon(1e-14));
  CHECK(sphere_area(3.0) == doctest::Approx(4.0 * pi).epsilon(1e-14));
  CHECK(sphere_area(5.0) == doctest::Approx(8.0 * pi * pi / 3.0).epsilon(1e-14));
  for (int n = 3; n <= 40; ++n) CHECK(rel(sphere_area(n + 1.0), 2.0 * pi * sphere_area(n - 1.0) / (n - 1.0)) < 1e-12);
  CHECK_THROWS_AS(sphere_area(0.0), DomainError);
}

TEST_CASE("power_law_multiplier examples") {
  CHECK(power_law_multiplier(6, 1, 2) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(power_law_multiplier(13, 2, 4) == doctest::Approx(840.0).epsilon(1e-13));
  CHECK(rel(power_law_multiplier(3, 0.5, 1.0 / 6.0), oracle::multiplier(3, 0.5, 1.0 / 6.0)) < 1e-12);
  CHECK(rel(power_law_multiplier(7.3, 1.7, 0.9), oracle::multiplier(7.3, 1.7, 0.9)) < 1e-12);
}

TEST_CASE("power_law_multiplier large n stays finite") {
  const double v = power_law_multiplier(400, 0.5, 100);
  CHECK(std::isfinite(v));
  CHECK(rel(v, oracle::multiplier(400, 0.5, 100)) < 1e-11);
}

TEST_CASE("power_law_multiplier domain errors name the bound") {
  auto message = [](double n, double s, double b) -> std::string {
    try {
      power_law_multiplier(n, s, b);
    } catch (const DomainError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message(5, 1, 0).find("beta > 0") != std::string::npos);
  CHECK(message(5, 1, 3).find("beta < n - 2s") != std::string::npos);
  CHECK(message(5, 1, -1).find("beta > 0") != std::string::npos);
  CHECK_THROWS_AS(power_law_multiplier(5, 0, 1), DomainError);
  CHECK_THROWS_AS(power_law_multiplier(5, 2.5, 0.1), DomainError);
}

TEST_CASE("hardy_constant") {
  CHECK(hardy_constant(4, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(hardy_constant(13, 2) == doctest::Approx(855.5625).epsilon(1e-13));
  CHECK(hardy_constant(4, 0.5) == doctest::Approx(1.0942198076).epsilon(1e-9));
  CHECK(rel(hardy_constant(4, 0.5), oracle::hardy(4, 0.5)) < 1e-13);
  CHECK(rel(hardy_constant(3, 0.5), 2.0 / pi) < 1e-13);
  CHECK_THROWS_AS(hardy_constant(2, 1), DomainError);
  CHECK_THROWS_AS(hardy_constant(3, 2), DomainError);
}

TEST_CASE("kappa_s") {
  CHECK(kappa_s(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  const oracle::mp q(0.25), t(0.75);
  CHECK(rel(kappa_s(0.25), static_cast<double>(oracle::tgamma(t) / (pow(oracle::mp(2), -0.5) * oracle::tgamma(q)))) < 1e-13);
  CHECK(rel(kappa_s(0.75), static_cast<double>(oracle::tgamma(q) / (pow(oracle::mp(2), 0.5) * oracle::tgamma(t)))) < 1e-13);
  CHECK_THROWS_AS(kappa_s(1.0), DomainError);
  CHECK_THROWS_AS(kappa_s(0.0), DomainError);
}

TEST_CASE("extension constants") {
  CHECK(extension_weight_exponent(1.5) == 0.0);
  CHECK(extension_weight_exponent(1.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(extension_weight_exponent(1.0), DomainError);
  CHECK(rel(fractional_laplacian_constant(3, 0.5), 1.0 / (pi * pi)) < 1e-14);
  CHECK_THROWS_AS(fractional_laplacian_constant(3, 1.0), DomainError);
}
