#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "coatplan/special_functions.hpp"
#include "oracles.hpp"

using coatplan::special::log_binomial;
using coatplan::special::log_lower_gamma_difference;
using coatplan::special::lower_incomplete_gamma;
using coatplan::special::regularized_lower_gamma;
using coatplan::special::regularized_upper_gamma;

TEST_CASE("gamma(1, x) has the exponential closed form") {
  for (double x : {0.5, 1.0, 3.0}) {
    CHECK(lower_incomplete_gamma(1.0, x) ==
          doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-14));
  }
}

TEST_CASE("gamma(2, 1) by integration by parts") {
  CHECK(lower_incomplete_gamma(2.0, 1.0) ==
        doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("gamma(1/2, 2) against the defining integral") {
  // The integrand u^(-1/2) e^(-u) substitutes to 2 e^(-v^2) with u = v^2,
  // which the oracle integrates without the endpoint singularity.
  const double expected = oracle::integrate(
      [](double v) { return 2.0 * std::exp(-v * v); }, 0.0, std::sqrt(2.0));
  CHECK(lower_incomplete_gamma(0.5, 2.0) ==
        doctest::Approx(expected).epsilon(1e-10));
  // Same value through the error function.
  CHECK(lower_incomplete_gamma(0.5, 2.0) ==
        doctest::Approx(std::sqrt(3.14159265358979323846) *
                        std::erf(std::sqrt(2.0)))
            .epsilon(1e-12));
}

TEST_CASE("regularized forms stay in [0,1] and sum to 1") {
  for (double s : {0.3, 0.5, 1.0, 2.7, 10.0, 250.0}) {
    for (double x : {0.0, 0.01, 0.5, 1.0, 5.0, 50.0, 400.0}) {
      const double p = regularized_lower_gamma(s, x);
      const double q = regularized_upper_gamma(s, x);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(p + q == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("regularized lower gamma is monotone in x") {
  for (double s : {0.4, 1.0, 3.5}) {
    double prev = -1.0;
    for (double x = 0.0; x <= 20.0; x += 0.25) {
      const double p = regularized_lower_gamma(s, x);
      CHECK(p >= prev);
      prev = p;
    }
  }
}

TEST_CASE("large s works through the regularized form") {
  // P(s, s) tends to 1/2 from below as s grows.
  CHECK(regularized_lower_gamma(500.0, 500.0) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::isinf(lower_incomplete_gamma(200.0, 100.0)));  // Γ(200) overflows
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lower_incomplete_gamma(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -0.5), std::domain_error);
  CHECK_THROWS_AS(regularized_lower_gamma(0.0, 1.0), std::domain_error);
}

TEST_CASE("log gamma difference matches the direct difference when benign") {
  for (double s : {0.7, 1.0, 2.5, 6.0}) {
    for (auto [x1, x2] : {std::pair{0.0, 1.5}, std::pair{0.5, 2.0},
                          std::pair{2.0, 8.0}, std::pair{1.0, 1.1}}) {
      const double direct =
          lower_incomplete_gamma(s, x2) - lower_incomplete_gamma(s, x1);
      const double viaLog = std::exp(log_lower_gamma_difference(s, x1, x2));
      CHECK(viaLog == doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("log binomial") {
  CHECK(std::exp(log_binomial(5, 2)) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(log_binomial(7, 0) == doctest::Approx(0.0));
  CHECK(log_binomial(60, 30) ==
        doctest::Approx(std::log(1.18264581564861424e17)).epsilon(1e-12));
  CHECK_THROWS_AS(log_binomial(3, 4), std::domain_error);
}
