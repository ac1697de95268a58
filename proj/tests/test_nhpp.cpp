#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "coatplan/nhpp.hpp"
#include "coatplan/rng.hpp"
#include "coatplan/simulator.hpp"
#include "oracles.hpp"

using coatplan::Rng;
using namespace coatplan::nhpp;

TEST_CASE("intensity direct values") {
  CHECK(intensity(PowerLawParams(2.0, 1.0), 5.0) == doctest::Approx(2.0));
  CHECK(intensity(PowerLawParams(1.0, 2.0), 3.0) == doctest::Approx(6.0));
  CHECK(intensity(PowerLawParams(0.001, 1.5), 100.0) ==
        doctest::Approx(0.015).epsilon(1e-12));
  CHECK_THROWS_AS(intensity(PowerLawParams(1.0, 0.5), 0.0), std::domain_error);
  CHECK_THROWS_AS(intensity(PowerLawParams(1.0, 2.0), -1.0), std::domain_error);
}

TEST_CASE("type invariants") {
  CHECK_THROWS_AS(PowerLawParams(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(PowerLawParams(1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(PowerLawParams(std::nan(""), 1.0), std::domain_error);
  CHECK_THROWS_AS(TimeInterval(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(TimeInterval(3.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(TimeInterval(4.0, 2.0), std::domain_error);
}

TEST_CASE("cumulative intensity values and quadrature cross-check") {
  CHECK(cumulative_intensity(PowerLawParams(0.5, 1.0), TimeInterval(0.0, 4.0)) ==
        doctest::Approx(2.0));
  CHECK(cumulative_intensity(PowerLawParams(2.0, 2.0), TimeInterval(1.0, 3.0)) ==
        doctest::Approx(16.0));
  const PowerLawParams p(0.3, 1.7);
  const double via_quad = oracle::integrate(
      [&](double t) { return intensity(p, t); }, 2.0, 9.0, 1e-13);
  CHECK(cumulative_intensity(p, TimeInterval(2.0, 9.0)) ==
        doctest::Approx(via_quad).epsilon(1e-10));
}

TEST_CASE("cumulative intensity is additive over adjacent windows") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const PowerLawParams p(std::exp(rng.uniform(-9.0, 2.0)),
                           rng.uniform(0.3, 3.0));
    const double t1 = rng.uniform(0.0, 50.0);
    const double t2 = t1 + rng.uniform(0.1, 60.0);
    const double t3 = t2 + rng.uniform(0.1, 60.0);
    const double split = cumulative_intensity(p, TimeInterval(t1, t2)) +
                         cumulative_intensity(p, TimeInterval(t2, t3));
    const double whole = cumulative_intensity(p, TimeInterval(t1, t3));
    CHECK(split == doctest::Approx(whole).epsilon(1e-12));
  }
}

TEST_CASE("count pmf at a mean of two") {
  const PowerLawParams p(0.5, 1.0);
  const TimeInterval iv(0.0, 4.0);
  CHECK(count_pmf(p, iv, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(count_pmf(p, iv, 2) ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-13));
  double total = 0.0;
  for (long n = 0; n <= 200; ++n) total += count_pmf(p, iv, n);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(count_pmf(p, iv, -1), std::invalid_argument);
}

TEST_CASE("count pmf normalizes over the truncated support") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const PowerLawParams p(std::exp(rng.uniform(-7.0, 1.0)),
                           rng.uniform(0.4, 2.5));
    const double t1 = rng.uniform(0.0, 30.0);
    const TimeInterval iv(t1, t1 + rng.uniform(1.0, 80.0));
    const double mean = cumulative_intensity(p, iv);
    const long n_max =
        static_cast<long>(std::ceil(mean + 20.0 * std::sqrt(mean))) + 5;
    double total = 0.0;
    for (long n = 0; n <= n_max; ++n) total += count_pmf(p, iv, n);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("k-th arrival cdf: exponential reduction and edge cases") {
  CHECK(kth_arrival_cdf(PowerLawParams(1.0, 1.0), 0.0, 1, 2.0) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
  CHECK(kth_arrival_cdf(PowerLawParams(0.7, 1.9), 3.0, 4, 3.0) == 0.0);
  CHECK_THROWS_AS(kth_arrival_cdf(PowerLawParams(1, 1), 2.0, 1, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(kth_arrival_cdf(PowerLawParams(1, 1), 0.0, 0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("k-th arrival cdf equals quadrature of the density") {
  const PowerLawParams p(0.4, 1.3);
  const double cdf = kth_arrival_cdf(p, 2.0, 3, 12.0);
  const double via_quad = oracle::integrate(
      [&](double t) { return kth_arrival_pdf(p, 2.0, 3, t); }, 2.0 + 1e-12,
      12.0, 1e-12);
  CHECK(cdf == doctest::Approx(via_quad).epsilon(1e-8));
}

TEST_CASE("homogeneous case reduces to the Erlang law") {
  const double a = 0.8;
  const PowerLawParams p(a, 1.0);
  for (int k : {1, 2, 5}) {
    for (double t = 0.5; t <= 25.0; t += 0.5) {
      CHECK(kth_arrival_cdf(p, 0.0, k, t) ==
            doctest::Approx(oracle::erlang_cdf(k, a, t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("cdf ordering and monotonicity") {
  const PowerLawParams p(0.2, 1.6);
  double prev = -1.0;
  for (double t = 1.0; t <= 30.0; t += 1.0) {
    const double c1 = kth_arrival_cdf(p, 1.0, 2, t);
    CHECK(c1 >= prev);
    prev = c1;
    CHECK(c1 >= kth_arrival_cdf(p, 1.0, 3, t));
  }
}

TEST_CASE("k-th arrival pdf: direct value, normalization, cdf derivative") {
  CHECK(kth_arrival_pdf(PowerLawParams(1.0, 1.0), 0.0, 1, 0.5) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

  const PowerLawParams p(0.3, 1.4);
  // Integrate to where the cdf has converged to 1.
  const double t_hi = std::pow(60.0 / p.a + std::pow(2.0, p.b), 1.0 / p.b);
  const double mass = oracle::integrate(
      [&](double t) { return kth_arrival_pdf(p, 2.0, 3, t); }, 2.0 + 1e-12,
      t_hi, 1e-11);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  for (double t : {3.0, 5.0, 9.0}) {
    const double h = 1e-5;
    const double fd = (kth_arrival_cdf(p, 2.0, 3, t + h) -
                       kth_arrival_cdf(p, 2.0, 3, t - h)) /
                      (2.0 * h);
    CHECK(kth_arrival_pdf(p, 2.0, 3, t) ==
          doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("expected defect age: homogeneous closed form") {
  // For a = b = 1 on [0,1], the expectation integrates to exp(-1).
  CHECK(expected_defect_age(PowerLawParams(1.0, 1.0), TimeInterval(0.0, 1.0), 1) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("expected defect age: late arrivals are young and rare") {
  const PowerLawParams p(1.0, 1.0);
  const TimeInterval iv(0.0, 1.0);
  const double age1 = expected_defect_age(p, iv, 1);
  const double age10 = expected_defect_age(p, iv, 10);
  CHECK(age10 < age1);
  CHECK(age10 < 1e-4);
  const auto mc = coatplan::sim::estimate_expected_age_mc(p, iv, 10, 1000000, 99);
  CHECK(std::fabs(age10 - mc.mean) <= 3.0 * mc.std_error + 1e-9);
}

TEST_CASE("expected defect age matches quadrature of the density") {
  const PowerLawParams p(0.05, 1.4);
  const TimeInterval iv(6.0, 18.0);
  const double closed = expected_defect_age(p, iv, 2);
  const double via_quad = oracle::integrate(
      [&](double t) { return (18.0 - t) * kth_arrival_pdf(p, 6.0, 2, t); },
      6.0 + 1e-12, 18.0, 1e-12);
  CHECK(closed == doctest::Approx(via_quad).epsilon(1e-6));
}

TEST_CASE("expected defect age: random windows agree with quadrature") {
  Rng rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const double b = rng.uniform(0.4, 2.4);
    const double t1 = rng.uniform(0.0, 40.0);
    const double t2 = t1 + rng.uniform(0.5, 60.0);
    const int k = 1 + static_cast<int>(rng.integer(8));
    // Scale a so the window holds a plausible number of arrivals.
    const double lam_target = k * rng.uniform(0.5, 2.5);
    const double a =
        lam_target / (std::pow(t2, b) - std::pow(t1, b));
    const PowerLawParams p(a, b);
    const TimeInterval iv(t1, t2);
    const auto detail = expected_defect_age_detail(p, iv, k);
    const double via_quad = oracle::integrate(
        [&](double t) {
          return t <= t1 ? 0.0 : (t2 - t) * kth_arrival_pdf(p, t1, k, t);
        },
        t1, t2, 1e-12);
    CHECK(detail.value ==
          doctest::Approx(via_quad).epsilon(1e-6).scale(1e-12));
    CHECK(detail.value >= 0.0);
    CHECK(detail.value <= iv.length());
  }
}

TEST_CASE("expected defect age decreases in k") {
  const PowerLawParams p(0.5, 1.3);
  const TimeInterval iv(0.0, 10.0);
  double prev = expected_defect_age(p, iv, 1);
  CHECK(prev > 0.0);
  CHECK(prev < iv.length());
  for (int k = 2; k <= 8; ++k) {
    const double cur = expected_defect_age(p, iv, k);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("expected total age cost") {
  const PowerLawParams p(1.0, 1.0);
  const TimeInterval iv(0.0, 1.0);

  const auto zero = expected_total_age_cost(
      p, iv, [](double) { return 0.0; }, 1e-9);
  CHECK(zero.value == 0.0);
  CHECK_FALSE(zero.cap_reached);

  const auto identity = expected_total_age_cost(
      p, iv, [](double age) { return age; }, 1e-9);
  // Campbell: the summed expected ages equal the integral of (t2 - t) dΛ.
  const double campbell = oracle::integrate(
      [&](double t) { return (1.0 - t) * intensity(p, t); }, 1e-12, 1.0);
  CHECK(identity.value == doctest::Approx(campbell).epsilon(1e-8));

  const auto tiny = expected_total_age_cost(
      PowerLawParams(1e-9, 1.0), iv, [](double age) { return age; }, 1e-9);
  CHECK(tiny.value < 1e-8);

  const auto capped = expected_total_age_cost(
      PowerLawParams(2.0, 1.0), TimeInterval(0.0, 30.0),
      [](double age) { return age; }, 1e-9, 3);
  CHECK(capped.cap_reached);
  CHECK(capped.terms == 3);
}

TEST_CASE("expected total age cost matches a Monte-Carlo sum of ages") {
  const PowerLawParams p(1.0, 1.0);
  const TimeInterval iv(0.0, 1.0);
  const auto analytic = expected_total_age_cost(
      p, iv, [](double age) { return age; }, 1e-9);

  const long n_paths = 1000000;
  std::vector<double> totals(n_paths);
  for (long i = 0; i < n_paths; ++i) {
    const auto path = coatplan::sim::sample_arrival_path(
        p, iv, coatplan::splitmix64(777 + static_cast<std::uint64_t>(i)));
    double sum = 0.0;
    for (double t : path.times) sum += 1.0 - t;
    totals[static_cast<size_t>(i)] = sum;
  }
  const auto est = oracle::mean_se(totals);
  CHECK(std::fabs(analytic.value - est.mean) <= 3.0 * est.se);
}
