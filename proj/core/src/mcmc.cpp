#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include "coatplan/inference.hpp"
#include "coatplan/parallel.hpp"
#include "coatplan/rng.hpp"

namespace coatplan::infer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586;

double log_normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(kTwoPi);
}

/// Reflects x into [lo, hi] (folding walk); symmetric, so the Metropolis
/// ratio needs no correction.
double reflect_into(double x, double lo, double hi) {
  const double w = hi - lo;
  if (!(w > 0.0)) return lo;
  double y = std::fmod(x - lo, 2.0 * w);
  if (y < 0.0) y += 2.0 * w;
  return lo + (y <= w ? y : 2.0 * w - y);
}

/// One 2-d adaptive random-walk block: scale steered to the target
/// acceptance by Robbins-Monro, proposal shape from the running draw
/// covariance. Both adapt during warmup only and are frozen afterward.
class AdaptiveBlock {
 public:
  explicit AdaptiveBlock(double target_acceptance)
      : target_(target_acceptance) {}

  void propose(Rng& rng, const double x[2], double out[2]) const {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    const double s = std::exp(log_scale_);
    out[0] = x[0] + s * l11_ * z1;
    out[1] = x[1] + s * (l21_ * z1 + l22_ * z2);
  }

  void adapt(const double x[2], bool accepted, long warmup_iter) {
    const double gain =
        std::pow(static_cast<double>(warmup_iter) + 1.0, -0.6);
    log_scale_ += gain * ((accepted ? 1.0 : 0.0) - target_);
    log_scale_ = std::clamp(log_scale_, -20.0, 5.0);

    ++n_;
    const double inv_n = 1.0 / static_cast<double>(n_);
    const double d0 = x[0] - mean_[0];
    const double d1 = x[1] - mean_[1];
    mean_[0] += d0 * inv_n;
    mean_[1] += d1 * inv_n;
    m2_[0] += d0 * (x[0] - mean_[0]);
    m2_[1] += d0 * (x[1] - mean_[1]);
    m2_[2] += d1 * (x[1] - mean_[1]);
    if (n_ >= 20) refresh_shape();
  }

 private:
  void refresh_shape() {
    const double inv = 1.0 / static_cast<double>(n_ - 1);
    const double c00 = m2_[0] * inv + 1e-8;
    const double c01 = m2_[1] * inv;
    const double c11 = m2_[2] * inv + 1e-8;
    l11_ = std::sqrt(c00);
    l21_ = c01 / l11_;
    const double rest = c11 - l21_ * l21_;
    l22_ = std::sqrt(std::max(rest, 1e-12));
  }

  double target_;
  double log_scale_ = std::log(2.38 / std::sqrt(2.0));
  long n_ = 0;
  double mean_[2] = {0.0, 0.0};
  double m2_[3] = {0.0, 0.0, 0.0};
  double l11_ = 1.0, l21_ = 0.0, l22_ = 1.0;
};

struct ChainTrace {
  std::vector<LogParams> draws;
  std::vector<double> lp;
};

/// Single-pair sampler: adaptive RWM on (ln a, ln b) against an arbitrary
/// log target. Iteration t of chain i draws from substream(seed + i, t),
/// so any transition can be replayed from (seed, chain, iteration).
ChainTrace run_pair_chain(
    const std::function<double(const LogParams&)>& log_target,
    const LogParams& init_center, std::uint64_t chain_root,
    const MCMCConfig& cfg) {
  ChainTrace trace;
  trace.draws.reserve(static_cast<size_t>(cfg.kept_draws));
  trace.lp.reserve(static_cast<size_t>(cfg.kept_draws));

  Rng init_rng = Rng::substream(chain_root, 0);
  double x[2] = {init_center.ln_a + 0.5 * init_rng.normal(),
                 init_center.ln_b + 0.5 * init_rng.normal()};
  double lp = log_target({x[0], x[1]});
  if (lp == -kInf) {
    x[0] = init_center.ln_a;
    x[1] = init_center.ln_b;
    lp = log_target({x[0], x[1]});
  }

  AdaptiveBlock block(cfg.target_acceptance);
  const long total =
      static_cast<long>(cfg.warmup_draws) +
      static_cast<long>(cfg.kept_draws) * static_cast<long>(cfg.thin);
  for (long it = 1; it <= total; ++it) {
    Rng rng = Rng::substream(chain_root, static_cast<std::uint64_t>(it));
    double prop[2];
    block.propose(rng, x, prop);
    const double lp_prop = log_target({prop[0], prop[1]});
    const bool accepted = lp_prop > -kInf &&
                          std::log(rng.uniform()) < lp_prop - lp;
    if (accepted) {
      x[0] = prop[0];
      x[1] = prop[1];
      lp = lp_prop;
    }
    const bool in_warmup = it <= cfg.warmup_draws;
    if (in_warmup) {
      block.adapt(x, accepted, it);
    } else {
      const long post = it - cfg.warmup_draws;
      if (post % cfg.thin == 0) {
        trace.draws.push_back({x[0], x[1]});
        trace.lp.push_back(lp);
      }
    }
  }
  return trace;
}

std::vector<std::vector<double>> per_chain(const std::vector<double>& flat,
                                           int n_chains, int per_chain_n) {
  std::vector<std::vector<double>> chains(static_cast<size_t>(n_chains));
  for (int c = 0; c < n_chains; ++c) {
    chains[static_cast<size_t>(c)].assign(
        flat.begin() + static_cast<long>(c) * per_chain_n,
        flat.begin() + static_cast<long>(c + 1) * per_chain_n);
  }
  return chains;
}

void add_param_diagnostics(PosteriorSamples& samples, const std::string& name,
                           const std::vector<double>& flat) {
  const auto chains =
      per_chain(flat, samples.n_chains, samples.draws_per_chain);
  const ParamDiagnostics d = chain_diagnostics(chains);
  samples.diagnostics[name] = d;
  if (d.degenerate) {
    samples.warnings.push_back(name + ": degenerate draws");
  } else {
    if (d.rhat > 1.05) {
      samples.warnings.push_back(name + ": R-hat " + std::to_string(d.rhat));
    }
    if (d.ess < 100.0) {
      samples.warnings.push_back(name + ": ESS " + std::to_string(d.ess));
    }
  }
}

void finalize_unit_diagnostics(PosteriorSamples& samples) {
  for (size_t u = 0; u < samples.unit_ids.size(); ++u) {
    std::vector<double> a(samples.draws[u].size());
    std::vector<double> b(samples.draws[u].size());
    for (size_t i = 0; i < samples.draws[u].size(); ++i) {
      a[i] = samples.draws[u][i].ln_a;
      b[i] = samples.draws[u][i].ln_b;
    }
    add_param_diagnostics(samples, samples.unit_ids[u] + ".ln_a", a);
    add_param_diagnostics(samples, samples.unit_ids[u] + ".ln_b", b);
  }
}

LogParams stable_center(const fleet::CompartmentHistory& history,
                        const LogParams& fallback, std::uint64_t seed) {
  if (history.entries.empty()) return fallback;
  MleOptions opt;
  opt.seed = splitmix64(seed ^ 0x5bd1e995u);
  const MleResult mle = fit_mle(history, opt);
  if (mle.degenerate) return fallback;
  return mle.log_params;
}

PosteriorSamples fit_single_target(
    const std::function<double(const LogParams&)>& log_target,
    const LogParams& center, const std::string& unit_id,
    const MCMCConfig& cfg) {
  PosteriorSamples out;
  out.unit_ids = {unit_id};
  out.n_chains = cfg.chains;
  out.draws_per_chain = cfg.kept_draws;
  out.draws.resize(1);
  out.unit_log_posterior.resize(1);
  out.draws[0].resize(static_cast<size_t>(out.total_draws()));
  out.unit_log_posterior[0].resize(static_cast<size_t>(out.total_draws()));

  std::vector<ChainTrace> traces(static_cast<size_t>(cfg.chains));
  parallel_for(cfg.chains, cfg.threads, [&](std::int64_t c) {
    traces[static_cast<size_t>(c)] = run_pair_chain(
        log_target, center, cfg.seed + static_cast<std::uint64_t>(c), cfg);
  });
  for (int c = 0; c < cfg.chains; ++c) {
    const auto& tr = traces[static_cast<size_t>(c)];
    for (int d = 0; d < cfg.kept_draws; ++d) {
      const size_t idx =
          static_cast<size_t>(c) * static_cast<size_t>(cfg.kept_draws) +
          static_cast<size_t>(d);
      out.draws[0][idx] = tr.draws[static_cast<size_t>(d)];
      out.unit_log_posterior[0][idx] = tr.lp[static_cast<size_t>(d)];
    }
  }
  finalize_unit_diagnostics(out);
  return out;
}

}  // namespace

void MCMCConfig::validate() const {
  if (chains < 1 || warmup_draws < 1 || kept_draws < 1 || thin < 1) {
    throw std::invalid_argument("MCMCConfig: all counts must be >= 1");
  }
  if (!(target_acceptance > 0.0) || !(target_acceptance < 1.0)) {
    throw std::invalid_argument("MCMCConfig: target_acceptance in (0,1)");
  }
}

MCMCConfig MCMCConfig::fast() {
  MCMCConfig cfg;
  cfg.chains = 2;
  cfg.warmup_draws = 1000;
  cfg.kept_draws = 1000;
  return cfg;
}

int PosteriorSamples::unit_index(const std::string& unit_id) const {
  for (size_t i = 0; i < unit_ids.size(); ++i) {
    if (unit_ids[i] == unit_id) return static_cast<int>(i);
  }
  return -1;
}

PosteriorSamples fit_bayes_individual(const fleet::CompartmentHistory& history,
                                      const Priors& priors,
                                      const MCMCConfig& mcmc) {
  mcmc.validate();
  priors.validate();
  const LogParams prior_mean{priors.mean_ln_a, priors.mean_ln_b};
  const LogParams center = stable_center(history, prior_mean, mcmc.seed);
  return fit_single_target(
      [&](const LogParams& lp) { return log_posterior(lp, history, priors); },
      center, history.unit_id(), mcmc);
}

PosteriorSamples fit_bayes_individual(const fleet::FleetDataset& dataset,
                                      const Priors& priors,
                                      const MCMCConfig& mcmc) {
  mcmc.validate();
  priors.validate();
  const size_t n_units = dataset.compartments.size();
  std::vector<PosteriorSamples> parts(n_units);
  parallel_for(static_cast<std::int64_t>(n_units), mcmc.threads,
               [&](std::int64_t u) {
                 MCMCConfig unit_cfg = mcmc;
                 unit_cfg.threads = 1;
                 unit_cfg.seed = splitmix64(
                     mcmc.seed + 0x517cc1b727220a95ULL *
                                     (static_cast<std::uint64_t>(u) + 1));
                 parts[static_cast<size_t>(u)] = fit_bayes_individual(
                     dataset.compartments[static_cast<size_t>(u)], priors,
                     unit_cfg);
               });
  PosteriorSamples out;
  out.n_chains = mcmc.chains;
  out.draws_per_chain = mcmc.kept_draws;
  for (auto& p : parts) {
    out.unit_ids.push_back(p.unit_ids[0]);
    out.draws.push_back(std::move(p.draws[0]));
    out.unit_log_posterior.push_back(std::move(p.unit_log_posterior[0]));
    for (auto& [k, v] : p.diagnostics) out.diagnostics[k] = v;
    for (auto& w : p.warnings) out.warnings.push_back(std::move(w));
  }
  return out;
}

PosteriorSamples fit_bayes_pooled(const fleet::FleetDataset& dataset,
                                  const Priors& priors,
                                  const MCMCConfig& mcmc) {
  mcmc.validate();
  priors.validate();
  MleOptions opt;
  opt.seed = splitmix64(mcmc.seed ^ 0x5bd1e995u);
  const MleResult mle = fit_mle(dataset, opt);
  const LogParams center = mle.degenerate
                               ? LogParams{priors.mean_ln_a, priors.mean_ln_b}
                               : mle.log_params;
  const auto target = [&](const LogParams& lp) -> double {
    const double za = (lp.ln_a - priors.mean_ln_a) / priors.sd_ln_a;
    const double zb = (lp.ln_b - priors.mean_ln_b) / priors.sd_ln_b;
    const double log_prior = -0.5 * (za * za + zb * zb) -
                             std::log(priors.sd_ln_a) -
                             std::log(priors.sd_ln_b) - std::log(kTwoPi);
    return pooled_log_likelihood(lp.to_params(), dataset) + log_prior;
  };
  return fit_single_target(target, center, "pooled", mcmc);
}

PosteriorSamples fit_bayes_hierarchical(const fleet::FleetDataset& dataset,
                                        const HyperPriors& hp,
                                        const MCMCConfig& mcmc) {
  mcmc.validate();
  hp.validate();
  if (dataset.compartments.empty()) {
    throw std::invalid_argument("fit_bayes_hierarchical: empty dataset");
  }
  const int n_units = static_cast<int>(dataset.compartments.size());
  const long total_iters =
      static_cast<long>(mcmc.warmup_draws) +
      static_cast<long>(mcmc.kept_draws) * static_cast<long>(mcmc.thin);

  struct HierChain {
    std::vector<std::vector<LogParams>> unit_draws;  // [unit][draw]
    std::vector<HyperDraw> hyper_draws;
    std::vector<double> lp;
  };
  std::vector<HierChain> chains(static_cast<size_t>(mcmc.chains));

  // Deterministic per-unit centers shared by every chain.
  std::vector<LogParams> centers(static_cast<size_t>(n_units));
  const LogParams hyper_center{hp.m_ln_a, hp.m_ln_b};
  for (int u = 0; u < n_units; ++u) {
    centers[static_cast<size_t>(u)] = stable_center(
        dataset.compartments[static_cast<size_t>(u)], hyper_center, mcmc.seed);
  }

  parallel_for(mcmc.chains, mcmc.threads, [&](std::int64_t c) {
    const std::uint64_t chain_root =
        mcmc.seed + static_cast<std::uint64_t>(c);
    HierChain& chain = chains[static_cast<size_t>(c)];
    chain.unit_draws.assign(static_cast<size_t>(n_units), {});
    for (auto& v : chain.unit_draws) {
      v.reserve(static_cast<size_t>(mcmc.kept_draws));
    }
    chain.hyper_draws.reserve(static_cast<size_t>(mcmc.kept_draws));
    chain.lp.reserve(static_cast<size_t>(mcmc.kept_draws));

    // State: hyperparameters and one (ln a, ln b) pair per unit.
    double mu_a = hp.m_ln_a;
    double sig_a = 0.5 * (hp.l_ln_a + hp.u_ln_a);
    double mu_b = hp.m_ln_b;
    double sig_b = 0.5 * (hp.l_ln_b + hp.u_ln_b);
    std::vector<LogParams> theta(static_cast<size_t>(n_units));
    std::vector<double> loglik(static_cast<size_t>(n_units));
    {
      Rng init_rng = Rng::substream(chain_root, 0);
      for (int u = 0; u < n_units; ++u) {
        theta[static_cast<size_t>(u)] = {
            centers[static_cast<size_t>(u)].ln_a + 0.5 * init_rng.normal(),
            centers[static_cast<size_t>(u)].ln_b + 0.5 * init_rng.normal()};
        loglik[static_cast<size_t>(u)] = log_likelihood(
            theta[static_cast<size_t>(u)].to_params(),
            dataset.compartments[static_cast<size_t>(u)]);
        if (loglik[static_cast<size_t>(u)] == -kInf) {
          theta[static_cast<size_t>(u)] = centers[static_cast<size_t>(u)];
          loglik[static_cast<size_t>(u)] = log_likelihood(
              theta[static_cast<size_t>(u)].to_params(),
              dataset.compartments[static_cast<size_t>(u)]);
        }
      }
    }

    AdaptiveBlock hyper_a_block(mcmc.target_acceptance);
    AdaptiveBlock hyper_b_block(mcmc.target_acceptance);
    std::vector<AdaptiveBlock> unit_blocks(
        static_cast<size_t>(n_units), AdaptiveBlock(mcmc.target_acceptance));

    const auto hyper_target = [&](double mu, double sig, double m, double s,
                                  bool use_a) -> double {
      if (!(sig > 0.0)) return -kInf;
      double lp = log_normal_pdf(mu, m, s);
      for (int u = 0; u < n_units; ++u) {
        const auto& th = theta[static_cast<size_t>(u)];
        lp += log_normal_pdf(use_a ? th.ln_a : th.ln_b, mu, sig);
      }
      return lp;
    };

    for (long it = 1; it <= total_iters; ++it) {
      const bool in_warmup = it <= mcmc.warmup_draws;
      // Block 0: (mu_ln_a, sigma_ln_a), reflected at the Uniform bounds.
      {
        Rng rng = Rng::substream(chain_root, static_cast<std::uint64_t>(it), 0);
        double cur[2] = {mu_a, sig_a};
        double prop[2];
        hyper_a_block.propose(rng, cur, prop);
        prop[1] = reflect_into(prop[1], hp.l_ln_a, hp.u_ln_a);
        const double lp_cur = hyper_target(mu_a, sig_a, hp.m_ln_a, hp.s_ln_a, true);
        const double lp_prop =
            hyper_target(prop[0], prop[1], hp.m_ln_a, hp.s_ln_a, true);
        const bool acc =
            lp_prop > -kInf && std::log(rng.uniform()) < lp_prop - lp_cur;
        if (acc) {
          mu_a = prop[0];
          sig_a = prop[1];
        }
        if (in_warmup) {
          const double st[2] = {mu_a, sig_a};
          hyper_a_block.adapt(st, acc, it);
        }
      }
      // Block 1: (mu_ln_b, sigma_ln_b).
      {
        Rng rng = Rng::substream(chain_root, static_cast<std::uint64_t>(it), 1);
        double cur[2] = {mu_b, sig_b};
        double prop[2];
        hyper_b_block.propose(rng, cur, prop);
        prop[1] = reflect_into(prop[1], hp.l_ln_b, hp.u_ln_b);
        const double lp_cur =
            hyper_target(mu_b, sig_b, hp.m_ln_b, hp.s_ln_b, false);
        const double lp_prop =
            hyper_target(prop[0], prop[1], hp.m_ln_b, hp.s_ln_b, false);
        const bool acc =
            lp_prop > -kInf && std::log(rng.uniform()) < lp_prop - lp_cur;
        if (acc) {
          mu_b = prop[0];
          sig_b = prop[1];
        }
        if (in_warmup) {
          const double st[2] = {mu_b, sig_b};
          hyper_b_block.adapt(st, acc, it);
        }
      }
      // Blocks 2..: one (ln a, ln b) pair per compartment, conditioned on
      // the current hyperparameters.
      for (int u = 0; u < n_units; ++u) {
        Rng rng = Rng::substream(chain_root, static_cast<std::uint64_t>(it),
                                 2 + static_cast<std::uint64_t>(u));
        auto& th = theta[static_cast<size_t>(u)];
        double cur[2] = {th.ln_a, th.ln_b};
        double prop[2];
        unit_blocks[static_cast<size_t>(u)].propose(rng, cur, prop);
        const LogParams prop_lp{prop[0], prop[1]};
        const double ll_prop = log_likelihood(
            prop_lp.to_params(), dataset.compartments[static_cast<size_t>(u)]);
        const double lp_cur = loglik[static_cast<size_t>(u)] +
                              log_normal_pdf(cur[0], mu_a, sig_a) +
                              log_normal_pdf(cur[1], mu_b, sig_b);
        const double lp_prop = ll_prop +
                               log_normal_pdf(prop[0], mu_a, sig_a) +
                               log_normal_pdf(prop[1], mu_b, sig_b);
        const bool acc =
            lp_prop > -kInf && std::log(rng.uniform()) < lp_prop - lp_cur;
        if (acc) {
          th = prop_lp;
          loglik[static_cast<size_t>(u)] = ll_prop;
        }
        if (in_warmup) {
          const double st[2] = {th.ln_a, th.ln_b};
          unit_blocks[static_cast<size_t>(u)].adapt(st, acc, it);
        }
      }

      if (!in_warmup) {
        const long post = it - mcmc.warmup_draws;
        if (post % mcmc.thin == 0) {
          double joint = log_normal_pdf(mu_a, hp.m_ln_a, hp.s_ln_a) +
                         log_normal_pdf(mu_b, hp.m_ln_b, hp.s_ln_b) -
                         std::log(hp.u_ln_a - hp.l_ln_a) -
                         std::log(hp.u_ln_b - hp.l_ln_b);
          for (int u = 0; u < n_units; ++u) {
            const auto& th = theta[static_cast<size_t>(u)];
            joint += loglik[static_cast<size_t>(u)] +
                     log_normal_pdf(th.ln_a, mu_a, sig_a) +
                     log_normal_pdf(th.ln_b, mu_b, sig_b);
          }
          for (int u = 0; u < n_units; ++u) {
            chain.unit_draws[static_cast<size_t>(u)].push_back(
                theta[static_cast<size_t>(u)]);
          }
          chain.hyper_draws.push_back({mu_a, sig_a, mu_b, sig_b});
          chain.lp.push_back(joint);
        }
      }
    }
  });

  PosteriorSamples out;
  out.hierarchical = true;
  out.n_chains = mcmc.chains;
  out.draws_per_chain = mcmc.kept_draws;
  out.draws.assign(static_cast<size_t>(n_units), {});
  for (int u = 0; u < n_units; ++u) {
    out.unit_ids.push_back(
        dataset.compartments[static_cast<size_t>(u)].unit_id());
    auto& dst = out.draws[static_cast<size_t>(u)];
    dst.reserve(static_cast<size_t>(out.total_draws()));
    for (int c = 0; c < mcmc.chains; ++c) {
      const auto& src = chains[static_cast<size_t>(c)]
                            .unit_draws[static_cast<size_t>(u)];
      dst.insert(dst.end(), src.begin(), src.end());
    }
  }
  out.hyper_draws.reserve(static_cast<size_t>(out.total_draws()));
  out.joint_log_posterior.reserve(static_cast<size_t>(out.total_draws()));
  for (int c = 0; c < mcmc.chains; ++c) {
    const auto& ch = chains[static_cast<size_t>(c)];
    out.hyper_draws.insert(out.hyper_draws.end(), ch.hyper_draws.begin(),
                           ch.hyper_draws.end());
    out.joint_log_posterior.insert(out.joint_log_posterior.end(),
                                   ch.lp.begin(), ch.lp.end());
  }

  finalize_unit_diagnostics(out);
  const auto hyper_component = [&](const char* name, auto getter) {
    std::vector<double> flat(out.hyper_draws.size());
    for (size_t i = 0; i < out.hyper_draws.size(); ++i) {
      flat[i] = getter(out.hyper_draws[i]);
    }
    add_param_diagnostics(out, name, flat);
  };
  hyper_component("mu_ln_a", [](const HyperDraw& h) { return h.mu_ln_a; });
  hyper_component("sigma_ln_a", [](const HyperDraw& h) { return h.sigma_ln_a; });
  hyper_component("mu_ln_b", [](const HyperDraw& h) { return h.mu_ln_b; });
  hyper_component("sigma_ln_b", [](const HyperDraw& h) { return h.sigma_ln_b; });
  return out;
}

}  // namespace coatplan::infer
