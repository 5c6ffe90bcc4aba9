#include <doctest.h>

#include <cmath>
#include <random>

#include "lanemden/exponents.hpp"
#include "lanemden/gamma.hpp"
#include "lanemden/radial.hpp"
#include "lanemden/singular.hpp"
#include "oracles.hpp"

using namespace lanemden;
using oracle::params;
using oracle::rel;

namespace {

struct Draw {
  double n, s, beta;
};

Draw valid_point(std::mt19937_64& rng, bool integer_s) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s = integer_s ? (u(rng) < 0.5 ? 1.0 : 2.0) : 0.05 + 1.9 * u(rng);
  const double n = 2.0 * s + 0.2 + 30.0 * u(rng);
  const double beta = (n - 2.0 * s) * (0.01 + 0.98 * u(rng));
  return {n, s, beta};
}

}  // namespace

TEST_CASE("multiplier matches the 50-digit oracle") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 300; ++k) {
    const auto d = valid_point(rng, false);
    CAPTURE(d.n);
    CAPTURE(d.s);
    CAPTURE(d.beta);
    CHECK(rel(power_law_multiplier(d.n, d.s, d.beta), oracle::multiplier(d.n, d.s, d.beta)) < 1e-12);
  }
}

TEST_CASE("multiplier polynomial forms for s = 1, 2") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 200; ++k) {
    const auto d = valid_point(rng, true);
    const double b = d.beta, n = d.n;
    const double expected = d.s == 1.0 ? b * (n - 2.0 - b) : b * (b + 2.0) * (n - b - 2.0) * (n - b - 4.0);
    CHECK(rel(power_law_multiplier(n, d.s, b), expected) < 1e-12);
  }
}

TEST_CASE("multiplier is symmetric and peaks at the Hardy exponent") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 300; ++k) {
    const auto d = valid_point(rng, false);
    const double mirror = d.n - 2.0 * d.s - d.beta;
    const double v = power_law_multiplier(d.n, d.s, d.beta);
    CHECK(rel(v, power_law_multiplier(d.n, d.s, mirror)) < 1e-11);
    CHECK(v <= hardy_constant(d.n, d.s) * (1.0 + 1e-12));
  }
}

TEST_CASE("Hardy constant matches the oracle and the multiplier at the midpoint") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double s = 0.05 + 1.9 * u(rng);
    const double n = 2.0 * s + 0.1 + 30.0 * u(rng);
    CHECK(rel(hardy_constant(n, s), oracle::hardy(n, s)) < 1e-12);
    CHECK(rel(hardy_constant(n, s), power_law_multiplier(n, s, (n - 2.0 * s) / 2.0)) < 1e-12);
  }
}

TEST_CASE("singular amplitude and residual") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double s = u(rng) < 0.5 ? 1.0 : 2.0;
    const double n = std::floor(2.0 * s + 1.0 + 20.0 * u(rng));
    const double p = sobolev_exponent(n, s) * (1.0 + 1e-3 + 3.0 * u(rng));
    const auto sol = make_singular(params(n, s, p));
    CHECK(rel(std::pow(sol.amplitude, p - 1.0), power_law_multiplier(n, s, sol.beta)) < 1e-12);
    for (int j = 0; j < 100; ++j) {
      const double r = std::exp(-5.0 + 10.0 * u(rng));
      const double scale = std::pow(sol.value(r).norm(), p);
      CHECK(residual_local(sol, r).norm() <= 1e-10 * scale);
    }
  }
}

TEST_CASE("classify is consistent with the Gamma condition") {
  std::mt19937_64 rng(57);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double s = 0.1 + 1.9 * u(rng);
    const double n = 2.0 * s + 0.5 + 30.0 * u(rng);
    const double p = 1.01 + 40.0 * u(rng);
    const auto pp = params(n, s, p);
    const auto tag = classify(pp).tag;
    const double ps = sobolev_exponent(n, s);
    if (std::abs(p - ps) <= 1e-9 * ps) continue;
    if (p < ps) {
      CHECK(tag == RegimeTag::SubcriticalTrivial);
    } else {
      CHECK((tag == RegimeTag::SupercriticalTrivial) == fractional_condition(pp).holds);
    }
  }
}

TEST_CASE("blow-downs compose") {
  ShootingConfig cfg;
  cfg.init_u = Eigen::VectorXd::Constant(1, 0.9);
  cfg.r_max = 12.0;
  const auto sol = solve_radial(params(5, 1, 3), cfg);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double a = 0.5 + 2.0 * u(rng), b = 0.5 + 2.0 * u(rng);
    const auto twice = blow_down(blow_down(sol, a), b);
    const auto once = blow_down(sol, a * b);
    const double r = 0.9 * once.r_end() * u(rng);
    CHECK(sample(twice, r).u[0] == doctest::Approx(sample(once, r).u[0]).epsilon(1e-12));
  }
}
