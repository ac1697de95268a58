#include <cmath>
#include <sstream>

#include <doctest.h>

#include "coatplan/inference.hpp"
#include "coatplan/rng.hpp"
#include "coatplan/simulator.hpp"

using coatplan::Rng;
using namespace coatplan::infer;
using coatplan::fleet::CompartmentHistory;
using coatplan::fleet::FleetDataset;
using coatplan::nhpp::PowerLawParams;
using coatplan::nhpp::TimeInterval;

namespace {

CompartmentHistory history_of(std::vector<std::pair<double, long>> entries,
                              double start = 0.0) {
  CompartmentHistory h;
  h.ship_id = "S1";
  h.compartment_id = "C1";
  h.start_time = start;
  h.entries = std::move(entries);
  return h;
}

CompartmentHistory random_history(Rng& rng, int n_intervals) {
  const PowerLawParams truth(std::exp(rng.uniform(-6.0, -2.0)),
                             rng.uniform(0.7, 1.8));
  std::vector<std::pair<double, long>> entries;
  double t = 0.0;
  for (int i = 0; i < n_intervals; ++i) {
    const double prev = t;
    t += rng.uniform(3.0, 24.0);
    const double lam = coatplan::nhpp::cumulative_intensity(
        truth, TimeInterval(prev, t));
    entries.emplace_back(t, rng.poisson(lam));
  }
  return history_of(std::move(entries));
}

}  // namespace

TEST_CASE("log likelihood direct values") {
  const double expected = -5.0 + 3.0 * std::log(5.0) - std::log(6.0);
  CHECK(log_likelihood(PowerLawParams(0.5, 1.0), history_of({{10.0, 3}})) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(log_likelihood(PowerLawParams(0.5, 1.0), history_of({{10.0, 0}})) ==
        doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("log likelihood composes from count log-pmfs") {
  Rng rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = random_history(rng, 8);
    const PowerLawParams p(std::exp(rng.uniform(-6.0, -2.0)),
                           rng.uniform(0.6, 2.0));
    double composed = 0.0;
    double prev = h.start_time;
    for (const auto& [t, n] : h.entries) {
      composed += coatplan::nhpp::count_log_pmf(p, TimeInterval(prev, t), n);
      prev = t;
    }
    CHECK(log_likelihood(p, h) ==
          doctest::Approx(composed).epsilon(1e-12));
  }
}

TEST_CASE("zero cumulative intensity with observed defects is impossible") {
  // b huge and t < 1 drives t^b to 0, making the window mass vanish.
  const auto h = history_of({{0.5, 2}});
  CHECK(log_likelihood(PowerLawParams(1e-300, 400.0), h) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("splitting a zero-count interval leaves the likelihood unchanged") {
  const PowerLawParams p(0.02, 1.4);
  const auto merged = history_of({{10.0, 2}, {30.0, 0}});
  const auto split = history_of({{10.0, 2}, {18.0, 0}, {30.0, 0}});
  CHECK(log_likelihood(p, merged) ==
        doctest::Approx(log_likelihood(p, split)).epsilon(1e-12));
}

TEST_CASE("pooled likelihood sums per-compartment values") {
  Rng rng(99);
  FleetDataset ds;
  double expected = 0.0;
  const PowerLawParams p(0.004, 1.3);
  for (int c = 0; c < 6; ++c) {
    auto h = random_history(rng, 5);
    h.compartment_id = "C" + std::to_string(c);
    expected += log_likelihood(p, h);
    ds.compartments.push_back(std::move(h));
  }
  CHECK(pooled_log_likelihood(p, ds) ==
        doctest::Approx(expected).epsilon(1e-12));

  FleetDataset single;
  single.compartments = {ds.compartments[0]};
  CHECK(pooled_log_likelihood(p, single) ==
        doctest::Approx(log_likelihood(p, ds.compartments[0])).epsilon(1e-12));

  FleetDataset twins;
  twins.compartments = {ds.compartments[0], ds.compartments[0]};
  twins.compartments[1].compartment_id = "copy";
  CHECK(pooled_log_likelihood(p, twins) ==
        doctest::Approx(2.0 * log_likelihood(p, ds.compartments[0]))
            .epsilon(1e-12));
}

TEST_CASE("mle with the shape pinned recovers the closed form") {
  MleOptions opt;
  opt.fix_ln_b = 0.0;
  const auto res = fit_mle(history_of({{3.0, 6}}), opt);
  CHECK(std::exp(res.log_params.ln_a) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(res.converged);
}

TEST_CASE("pooled b-constrained mle equals defects over exposure") {
  Rng rng(2024);
  FleetDataset ds;
  long defects = 0;
  double exposure = 0.0;
  for (int c = 0; c < 8; ++c) {
    auto h = random_history(rng, 6);
    h.compartment_id = "C" + std::to_string(c);
    defects += h.total_defects();
    exposure += h.entries.back().first - h.start_time;
    ds.compartments.push_back(std::move(h));
  }
  REQUIRE(defects > 0);
  MleOptions opt;
  opt.fix_ln_b = 0.0;
  const auto res = fit_mle(ds, opt);
  CHECK(std::exp(res.log_params.ln_a) ==
        doctest::Approx(static_cast<double>(defects) / exposure).epsilon(1e-8));
}

TEST_CASE("mle flags thin data") {
  const auto one = fit_mle(history_of({{12.0, 4}}));
  CHECK(one.degenerate);

  const auto zero = fit_mle(history_of({{12.0, 0}, {24.0, 0}}));
  CHECK(zero.degenerate);
  CHECK(zero.log_params.ln_a == doctest::Approx(kLnAMin));

  const auto two = fit_mle(history_of({{12.0, 3}, {30.0, 5}}));
  CHECK_FALSE(two.degenerate);
}

TEST_CASE("pooled mle recovery against a coarse grid search") {
  coatplan::sim::SynthConfig cfg;
  cfg.n_compartments = 12;
  cfg.mu_ln_a = std::log(0.01);
  cfg.sigma_ln_a = 0.0;
  cfg.mu_ln_b = std::log(1.3);
  cfg.sigma_ln_b = 0.0;
  cfg.interval_choices = {6.0, 9.0, 12.0};
  cfg.horizon_months = 96.0;
  const auto synth = coatplan::sim::synthesize_fleet(cfg, 31415);

  const auto res = fit_mle(synth.dataset);
  CHECK(res.converged);
  CHECK_FALSE(res.degenerate);

  double best_a = 0.0, best_b = 0.0;
  double best = -1e300;
  for (double la = -6.5; la <= -2.5; la += 0.02) {
    for (double lb = -0.5; lb <= 1.0; lb += 0.02) {
      const double ll = pooled_log_likelihood(
          PowerLawParams(std::exp(la), std::exp(lb)), synth.dataset);
      if (ll > best) {
        best = ll;
        best_a = la;
        best_b = lb;
      }
    }
  }
  CHECK(res.log_params.ln_a == doctest::Approx(best_a).epsilon(0.03));
  CHECK(res.log_params.ln_b == doctest::Approx(best_b).epsilon(0.03));
  CHECK(res.log_likelihood >= best - 1e-9);
}

TEST_CASE("log posterior composition") {
  const Priors priors;  // the default Normal(-7, 5^2), Normal(0, 3^2)
  const auto h = history_of({{12.0, 2}, {24.0, 1}});

  SUBCASE("flat-like priors shift the likelihood by a constant") {
    Priors flat;
    flat.sd_ln_a = 1e6;
    flat.sd_ln_b = 1e6;
    const LogParams p1{-4.0, 0.2};
    const LogParams p2{-5.5, -0.3};
    const double c1 = log_posterior(p1, h, flat) -
                      log_likelihood(p1.to_params(), h);
    const double c2 = log_posterior(p2, h, flat) -
                      log_likelihood(p2.to_params(), h);
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-9));
  }

  SUBCASE("empty history leaves the prior density") {
    const auto empty = history_of({});
    const LogParams p{-6.0, 0.5};
    const double za = (p.ln_a + 7.0) / 5.0;
    const double zb = (p.ln_b - 0.0) / 3.0;
    const double expected = -0.5 * (za * za + zb * zb) - std::log(5.0) -
                            std::log(3.0) -
                            std::log(2.0 * 3.14159265358979323846);
    CHECK(log_posterior(p, empty, priors) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("spot values recompose from pmf and normal densities") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const LogParams p{rng.uniform(-7.0, -3.0), rng.uniform(-0.5, 0.8)};
      double expected = log_likelihood(p.to_params(), h);
      const auto norm_lpdf = [](double x, double m, double s) {
        const double z = (x - m) / s;
        return -0.5 * z * z - std::log(s) -
               0.5 * std::log(2.0 * 3.14159265358979323846);
      };
      expected += norm_lpdf(p.ln_a, priors.mean_ln_a, priors.sd_ln_a);
      expected += norm_lpdf(p.ln_b, priors.mean_ln_b, priors.sd_ln_b);
      CHECK(log_posterior(p, h, priors) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("samples csv round-trips") {
  PosteriorSamples s;
  s.unit_ids = {"S1/C1", "S1/C2"};
  s.n_chains = 2;
  s.draws_per_chain = 3;
  Rng rng(8);
  s.draws.resize(2);
  for (auto& d : s.draws) {
    for (int i = 0; i < 6; ++i) d.push_back({rng.normal(), rng.normal()});
  }
  std::ostringstream out;
  write_samples_csv(s, out, {"config {}"});
  std::istringstream in(out.str());
  const auto back = parse_samples_csv(in);
  REQUIRE(back.unit_ids == s.unit_ids);
  CHECK(back.n_chains == 2);
  CHECK(back.draws_per_chain == 3);
  for (size_t u = 0; u < 2; ++u) {
    for (size_t i = 0; i < 6; ++i) {
      CHECK(back.draws[u][i].ln_a == s.draws[u][i].ln_a);
      CHECK(back.draws[u][i].ln_b == s.draws[u][i].ln_b);
    }
  }
}
