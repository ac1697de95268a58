#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "coatplan/inference.hpp"

namespace coatplan::infer {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size() - 1);
}

/// Autocovariance at the given lag (biased, divisor n).
double autocov(const std::vector<double>& v, double mean, size_t lag) {
  double acc = 0.0;
  for (size_t i = lag; i < v.size(); ++i) {
    acc += (v[i] - mean) * (v[i - lag] - mean);
  }
  return acc / static_cast<double>(v.size());
}

}  // namespace

ParamDiagnostics chain_diagnostics(
    const std::vector<std::vector<double>>& chains) {
  ParamDiagnostics out;
  if (chains.size() < 2 || chains[0].size() < 4) {
    out.degenerate = true;
    return out;
  }

  // Split each chain in half.
  std::vector<std::vector<double>> halves;
  const size_t n = chains[0].size() / 2;
  for (const auto& c : chains) {
    halves.emplace_back(c.begin(), c.begin() + static_cast<long>(n));
    halves.emplace_back(c.begin() + static_cast<long>(n),
                        c.begin() + static_cast<long>(2 * n));
  }
  const size_t m = halves.size();

  std::vector<double> means(m);
  std::vector<double> vars(m);
  for (size_t c = 0; c < m; ++c) {
    means[c] = mean_of(halves[c]);
    vars[c] = variance_of(halves[c], means[c]);
  }
  const double w = mean_of(vars);
  const double grand = mean_of(means);
  double b = 0.0;
  for (double mu : means) b += (mu - grand) * (mu - grand);
  b *= static_cast<double>(n) / static_cast<double>(m - 1);

  if (!(w > 0.0)) {
    out.degenerate = true;
    return out;
  }
  const double nn = static_cast<double>(n);
  const double var_plus = (nn - 1.0) / nn * w + b / nn;
  out.rhat = std::sqrt(var_plus / w);

  // Combined autocorrelations with Geyer initial-monotone truncation.
  std::vector<double> rho;
  const size_t max_lag = n > 3 ? n - 3 : 0;
  for (size_t lag = 1; lag <= max_lag; ++lag) {
    double acov = 0.0;
    for (size_t c = 0; c < m; ++c) acov += autocov(halves[c], means[c], lag);
    acov /= static_cast<double>(m);
    rho.push_back(1.0 - (w - acov) / var_plus);
  }
  double tau = 1.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (size_t lag = 0; lag + 1 < rho.size(); lag += 2) {
    double pair = rho[lag] + rho[lag + 1];
    if (pair < 0.0) break;
    pair = std::min(pair, prev_pair);  // enforce monotone sequence
    prev_pair = pair;
    tau += 2.0 * pair;
  }
  out.ess = static_cast<double>(m) * nn / tau;
  out.ess = std::min(out.ess, static_cast<double>(m) * nn);
  return out;
}

std::map<std::string, ParamDiagnostics> diagnostics(
    const PosteriorSamples& samples) {
  std::map<std::string, ParamDiagnostics> out;
  const int n_chains = samples.n_chains;
  const int per = samples.draws_per_chain;
  const auto split = [&](const std::vector<double>& flat) {
    std::vector<std::vector<double>> chains(static_cast<size_t>(n_chains));
    for (int c = 0; c < n_chains; ++c) {
      chains[static_cast<size_t>(c)].assign(
          flat.begin() + static_cast<long>(c) * per,
          flat.begin() + static_cast<long>(c + 1) * per);
    }
    return chain_diagnostics(chains);
  };
  for (size_t u = 0; u < samples.unit_ids.size(); ++u) {
    std::vector<double> a(samples.draws[u].size());
    std::vector<double> b(samples.draws[u].size());
    for (size_t i = 0; i < samples.draws[u].size(); ++i) {
      a[i] = samples.draws[u][i].ln_a;
      b[i] = samples.draws[u][i].ln_b;
    }
    out[samples.unit_ids[u] + ".ln_a"] = split(a);
    out[samples.unit_ids[u] + ".ln_b"] = split(b);
  }
  if (samples.hierarchical && !samples.hyper_draws.empty()) {
    const auto hyper = [&](const char* name, auto getter) {
      std::vector<double> flat(samples.hyper_draws.size());
      for (size_t i = 0; i < samples.hyper_draws.size(); ++i) {
        flat[i] = getter(samples.hyper_draws[i]);
      }
      out[name] = split(flat);
    };
    hyper("mu_ln_a", [](const HyperDraw& h) { return h.mu_ln_a; });
    hyper("sigma_ln_a", [](const HyperDraw& h) { return h.sigma_ln_a; });
    hyper("mu_ln_b", [](const HyperDraw& h) { return h.mu_ln_b; });
    hyper("sigma_ln_b", [](const HyperDraw& h) { return h.sigma_ln_b; });
  }
  return out;
}

}  // namespace coatplan::infer
