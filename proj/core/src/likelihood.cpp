#include <cmath>
#include <limits>
#include <stdexcept>

#include "coatplan/inference.hpp"

namespace coatplan::infer {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

nhpp::PowerLawParams LogParams::to_params() const {
  return nhpp::PowerLawParams(std::exp(ln_a), std::exp(ln_b));
}

void Priors::validate() const {
  if (!(sd_ln_a > 0.0) || !(sd_ln_b > 0.0)) {
    throw std::invalid_argument("Priors: standard deviations must be > 0");
  }
}

void HyperPriors::validate() const {
  if (!(s_ln_a > 0.0) || !(s_ln_b > 0.0)) {
    throw std::invalid_argument("HyperPriors: s must be > 0");
  }
  if (!(l_ln_a >= 0.0) || !(l_ln_a < u_ln_a) || !(l_ln_b >= 0.0) ||
      !(l_ln_b < u_ln_b)) {
    throw std::invalid_argument("HyperPriors: requires 0 <= l < u");
  }
}

double log_likelihood(const nhpp::PowerLawParams& params,
                      const fleet::CompartmentHistory& history) {
  double total = 0.0;
  double prev = history.start_time;
  for (const auto& [t, n] : history.entries) {
    const double lam =
        params.a * (std::pow(t, params.b) - std::pow(prev, params.b));
    if (lam <= 0.0) {
      if (n > 0) return -kInf;
      prev = t;
      continue;
    }
    total -= lam;
    if (n > 0) {
      total += static_cast<double>(n) * std::log(lam) -
               std::lgamma(static_cast<double>(n) + 1.0);
    }
    prev = t;
  }
  return total;
}

double pooled_log_likelihood(const nhpp::PowerLawParams& params,
                             const fleet::FleetDataset& dataset) {
  double total = 0.0;
  for (const auto& h : dataset.compartments) {
    total += log_likelihood(params, h);
    if (total == -kInf) return total;
  }
  return total;
}

double log_posterior(const LogParams& logparams,
                     const fleet::CompartmentHistory& history,
                     const Priors& priors) {
  priors.validate();
  const double za = (logparams.ln_a - priors.mean_ln_a) / priors.sd_ln_a;
  const double zb = (logparams.ln_b - priors.mean_ln_b) / priors.sd_ln_b;
  const double log_prior = -0.5 * (za * za + zb * zb) -
                           std::log(priors.sd_ln_a) -
                           std::log(priors.sd_ln_b) -
                           std::log(2.0 * 3.14159265358979323846);
  if (history.entries.empty()) return log_prior;
  return log_likelihood(logparams.to_params(), history) + log_prior;
}

}  // namespace coatplan::infer
