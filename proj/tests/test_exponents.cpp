#include <doctest.h>

#include <cmath>

#include "lanemden/errors.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/gamma.hpp"
#include "oracles.hpp"

using namespace lanemden;
using oracle::params;
using oracle::rel;

TEST_CASE("sobolev_exponent") {
  CHECK(sobolev_exponent(3, 1) == 5.0);
  CHECK(sobolev_exponent(2, 1) == kInfinity);
  CHECK(sobolev_exponent(5, 2) == 9.0);
  CHECK(sobolev_exponent(4, 2) == kInfinity);
}

TEST_CASE("jl closed form") {
  CHECK(jl_exponent_closed_form(10, 1) == kInfinity);
  CHECK(rel(jl_exponent_closed_form(11, 1), (37.0 + 8.0 * std::sqrt(10.0)) / 9.0) < 1e-14);
  CHECK(jl_exponent_closed_form(12, 2) == kInfinity);
  CHECK(jl_exponent_closed_form(13, 2) == doctest::Approx(28.172).epsilon(1e-4));
  CHECK_THROWS_AS(jl_exponent_closed_form(5, 0.5), UnsupportedError);
}

TEST_CASE("jl root matches closed forms") {
  CHECK(rel(jl_exponent_root(11, 1), jl_exponent_closed_form(11, 1)) < 1e-9);
  const double p = jl_exponent_root(13, 2);
  CHECK(rel(p, jl_exponent_closed_form(13, 2)) < 1e-9);
  const double q = 4.0 / (p - 1.0);
  CHECK(rel(p * q * (q + 2.0) * (11.0 - q) * (9.0 - q), 855.5625) < 1e-9);
}

TEST_CASE("jl root infinite cases") {
  CHECK(jl_exponent_root(3, 0.5) == kInfinity);
  CHECK(jl_exponent_root(10, 1) == kInfinity);
  CHECK(jl_exponent_root(12, 2) == kInfinity);
  CHECK_THROWS_AS(jl_exponent_root(2, 1), DomainError);
}

TEST_CASE("jl root nonincreasing in n") {
  for (double s : {1.0, 2.0}) {
    double prev = kInfinity;
    for (int n = 5; n <= 60; ++n) {
      const double p = jl_exponent_root(n, s);
      CHECK(p <= prev);
      prev = p;
    }
  }
}

TEST_CASE("fractional_condition") {
  const auto a = fractional_condition(params(11, 1, 7));
  CHECK_FALSE(a.holds);
  CHECK(a.margin < 0.0);
  const auto b = fractional_condition(params(11, 1, 6.9));
  CHECK(b.holds);
  CHECK(b.margin > 0.0);
  CHECK(fractional_condition(params(3, 0.5, 7)).holds);
  CHECK_THROWS_AS(fractional_condition(params(3, 1, 1.5)), DomainError);
}

TEST_CASE("classify examples") {
  CHECK(classify(params(3, 1, 2)).tag == RegimeTag::SubcriticalTrivial);
  CHECK(classify(params(11, 1, 3, 2)).tag == RegimeTag::SupercriticalTrivial);
  CHECK(classify(params(13, 1, 3)).tag == RegimeTag::Unclassified);
  CHECK(classify(params(4, 1, 3)).tag == RegimeTag::CriticalFiniteEnergy);
  CHECK(classify(params(4, 1, 3.0 * (1.0 + 1e-14))).tag == RegimeTag::CriticalFiniteEnergy);
  CHECK_THROWS_AS(classify(params(2, 1, 7)), DomainError);
  CHECK_THROWS_AS(classify(params(1.5, 1, 2)), DomainError);
}

TEST_CASE("classify margins carry the sign of the tag") {
  const auto sup = classify(params(11, 1, 3));
  CHECK(sup.margin > 0.0);
  const auto un = classify(params(11, 1, 8));
  CHECK(un.margin <= 0.0);
  CHECK(classify(params(3, 1, 2)).margin == 0.0);
}

TEST_CASE("to_string") {
  CHECK(to_string(RegimeTag::SupercriticalTrivial) == "SupercriticalTrivial");
  CHECK(to_string(RegimeTag::Unclassified) == "Unclassified");
}

TEST_CASE("Range") {
  Range r{1.0, 2.0, 5};
  CHECK(r.at(0) == 1.0);
  CHECK(r.at(4) == 2.0);
  CHECK(r.at(2) == 1.5);
  CHECK(r.step() == 0.25);
}

TEST_CASE("phase diagram single point") {
  const auto d = phase_diagram({4, 4, 2}, {3, 3, 2}, 1);
  for (const auto& c : d.cells) CHECK(c.tag == RegimeTag::CriticalFiniteEnergy);
}

TEST_CASE("phase diagram transition follows the JL curve (s = 1)") {
  const Range nr{3, 15, 13}, pr{1.1, 10, 90};
  const auto d = phase_diagram(nr, pr, 1);
  REQUIRE(d.cells.size() == 13u * 90u);
  for (std::size_t col = 0; col < d.n_values.size(); ++col) {
    const double n = d.n_values[col];
    const double pc = jl_exponent_closed_form(n, 1);
    for (std::size_t row = 0; row < d.p_values.size(); ++row) {
      const double p = d.p_values[row];
      const auto tag = d.at(row, col).tag;
      if (p > sobolev_exponent(n, 1) * (1.0 + 1e-9) && std::abs(p - pc) > pr.step()) {
        CAPTURE(n);
        CAPTURE(p);
        CHECK((tag == RegimeTag::SupercriticalTrivial) == (p < pc));
      }
    }
  }
}

TEST_CASE("phase diagram transition follows the JL curve (s = 2)") {
  const Range nr{5, 20, 16}, pr{1.1, 40, 60};
  const auto d = phase_diagram(nr, pr, 2);
  for (std::size_t col = 0; col < d.n_values.size(); ++col) {
    const double n = d.n_values[col];
    const double pc = jl_exponent_closed_form(n, 2);
    for (std::size_t row = 0; row < d.p_values.size(); ++row) {
      const double p = d.p_values[row];
      if (p > sobolev_exponent(n, 2) && std::abs(p - pc) > pr.step())
        CHECK((d.at(row, col).tag == RegimeTag::SupercriticalTrivial) == (p < pc));
    }
  }
}

TEST_CASE("phase diagram rejects n <= 2s and tiny ranges") {
  CHECK_THROWS_AS(phase_diagram({1, 5, 5}, {1.1, 3, 5}, 1), DomainError);
  CHECK_THROWS_AS(phase_diagram({3, 5, 1}, {1.1, 3, 5}, 1), DomainError);
}
