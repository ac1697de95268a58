#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coatplan/inference.hpp"
#include "coatplan/rng.hpp"

namespace coatplan::infer {

namespace {

/// Type-7 (linear interpolation) quantile of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

/// Nearest-rank quantile for the integer-valued counts.
double count_quantile_sorted(const std::vector<double>& sorted, double p) {
  const size_t n = sorted.size();
  const double rank = std::ceil(p * static_cast<double>(n));
  const size_t idx = rank < 1.0 ? 0 : std::min(static_cast<size_t>(rank) - 1,
                                               n - 1);
  return sorted[idx];
}

}  // namespace

PredictiveSummary posterior_predictive_counts(
    const PosteriorSamples& samples, const std::string& unit_id,
    const nhpp::TimeInterval& interval, const std::vector<double>& quantiles,
    std::uint64_t seed) {
  const int u = samples.unit_index(unit_id);
  if (u < 0) {
    throw std::invalid_argument("posterior_predictive_counts: unit '" +
                                unit_id + "' not present in samples");
  }
  for (double q : quantiles) {
    if (!(q >= 0.0) || !(q <= 1.0)) {
      throw std::invalid_argument("quantiles must lie in [0, 1]");
    }
  }
  const auto& draws = samples.draws[static_cast<size_t>(u)];
  if (draws.empty()) {
    throw std::invalid_argument("posterior_predictive_counts: no draws");
  }

  std::vector<double> lambdas(draws.size());
  std::vector<double> counts(draws.size());
  for (size_t i = 0; i < draws.size(); ++i) {
    const auto p = draws[i].to_params();
    const double lam = nhpp::cumulative_intensity(p, interval);
    lambdas[i] = lam;
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    counts[i] = static_cast<double>(rng.poisson(lam));
  }

  PredictiveSummary out;
  out.quantiles = quantiles;
  double lam_sum = 0.0;
  double count_sum = 0.0;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    lam_sum += lambdas[i];
    count_sum += counts[i];
  }
  out.lambda_mean = lam_sum / static_cast<double>(lambdas.size());
  out.count_mean = count_sum / static_cast<double>(counts.size());

  std::sort(lambdas.begin(), lambdas.end());
  std::sort(counts.begin(), counts.end());
  for (double q : quantiles) {
    out.lambda_q.push_back(quantile_sorted(lambdas, q));
    out.count_q.push_back(count_quantile_sorted(counts, q));
  }
  return out;
}

}  // namespace coatplan::infer
