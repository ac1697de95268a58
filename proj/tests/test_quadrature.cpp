#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "coatplan/quadrature.hpp"
#include "oracles.hpp"

using coatplan::quad::integrate;

TEST_CASE("polynomial and trig integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0,
                  3.14159265358979323846, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-11));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("agrees with the Gauss-Legendre oracle on a sharp peak") {
  const auto f = [](double x) { return std::exp(-50.0 * (x - 0.3) * (x - 0.3)); };
  const double expected = oracle::integrate(f, 0.0, 1.0);
  CHECK(integrate(f, 0.0, 1.0, 1e-12) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 1.0, 0.0, 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, 1.0, 0.0),
                  std::invalid_argument);
}
