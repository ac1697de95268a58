#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coatplan/fleet_data.hpp"
#include "coatplan/nhpp.hpp"

namespace coatplan::infer {

/// Unconstrained working point (ln a, ln b).
struct LogParams {
  double ln_a = 0.0;
  double ln_b = 0.0;
  nhpp::PowerLawParams to_params() const;
};

/// Independent Normal priors on (ln a, ln b).
struct Priors {
  double mean_ln_a = -7.0;
  double sd_ln_a = 5.0;
  double mean_ln_b = 0.0;
  double sd_ln_b = 3.0;
  void validate() const;
};

/// Three-stage hyperpriors: Normal on the prior means, Uniform on the
/// prior standard deviations.
struct HyperPriors {
  double m_ln_a = -7.0;
  double s_ln_a = 4.0;
  double l_ln_a = 0.0;
  double u_ln_a = 5.0;
  double m_ln_b = -2.0;
  double s_ln_b = 2.0;
  double l_ln_b = 0.0;
  double u_ln_b = 3.0;
  void validate() const;
};

struct MCMCConfig {
  int chains = 4;
  int warmup_draws = 2000;
  int kept_draws = 2000;   // per chain, after thinning
  int thin = 1;            // keep every thin-th post-warmup draw
  std::uint64_t seed = 0;
  double target_acceptance = 0.3;
  int threads = 0;  // <= 0: hardware concurrency
  void validate() const;
  static MCMCConfig fast();
};

struct ParamDiagnostics {
  double rhat = 0.0;
  double ess = 0.0;
  bool degenerate = false;  // constant chain or too few chains
};

struct HyperDraw {
  double mu_ln_a = 0.0;
  double sigma_ln_a = 0.0;
  double mu_ln_b = 0.0;
  double sigma_ln_b = 0.0;
};

/// MCMC output. Draw layout is unit-major: draws[u][c * draws_per_chain + d]
/// holds draw d of chain c for unit u, so chains can be recovered exactly.
struct PosteriorSamples {
  std::vector<std::string> unit_ids;  // "ship/compartment"
  int n_chains = 0;
  int draws_per_chain = 0;
  std::vector<std::vector<LogParams>> draws;

  /// Individual fits: per-unit log-posterior trace aligned with draws.
  std::vector<std::vector<double>> unit_log_posterior;

  bool hierarchical = false;
  std::vector<HyperDraw> hyper_draws;      // chains * draws_per_chain
  std::vector<double> joint_log_posterior; // hierarchical trace

  std::map<std::string, ParamDiagnostics> diagnostics;
  std::vector<std::string> warnings;

  long total_draws() const {
    return static_cast<long>(n_chains) * draws_per_chain;
  }
  int unit_index(const std::string& unit_id) const;
};

/// Eq.-5-style interval-censored Poisson log-likelihood of one history.
/// Returns -inf when some interval has zero cumulative intensity but a
/// positive count.
double log_likelihood(const nhpp::PowerLawParams& params,
                      const fleet::CompartmentHistory& history);

/// Pooled log-likelihood: every compartment of every ship under one
/// parameter pair.
double pooled_log_likelihood(const nhpp::PowerLawParams& params,
                             const fleet::FleetDataset& dataset);

/// Unnormalized log posterior in the (ln a, ln b) working space.
double log_posterior(const LogParams& logparams,
                     const fleet::CompartmentHistory& history,
                     const Priors& priors);

struct MleOptions {
  std::optional<LogParams> initial;  // default: moment heuristic
  std::optional<double> fix_ln_b;    // constrain the shape; 1-d search on ln a
  std::uint64_t seed = 1;
  int multistarts = 5;
  double jitter_sd = 0.75;
  int max_iterations = 4000;
};

struct MleResult {
  LogParams log_params;
  double log_likelihood = 0.0;
  /// Fewer than two distinct informative intervals: (a, b) not jointly
  /// identified; with all-zero counts the estimate sits at the lower
  /// search bound for ln a.
  bool degenerate = false;
  bool converged = false;
  nhpp::PowerLawParams params() const { return log_params.to_params(); }
};

/// Search box for the simplex (working space); MLE results are clamped
/// inside it and the all-zero-count case reports ln_a at the lower bound.
inline constexpr double kLnAMin = -30.0;
inline constexpr double kLnAMax = 15.0;
inline constexpr double kLnBMin = -6.0;
inline constexpr double kLnBMax = 6.0;

MleResult fit_mle(const fleet::CompartmentHistory& history,
                  const MleOptions& options = {});
MleResult fit_mle(const fleet::FleetDataset& dataset,
                  const MleOptions& options = {});

/// Adaptive random-walk Metropolis on (ln a, ln b) for one compartment.
/// Chain i uses seed + i; proposal covariance adapts during warmup only.
PosteriorSamples fit_bayes_individual(const fleet::CompartmentHistory& history,
                                      const Priors& priors,
                                      const MCMCConfig& mcmc);

/// Independent per-compartment fits over a whole dataset (unit u is run
/// with a seed derived from (seed, u)).
PosteriorSamples fit_bayes_individual(const fleet::FleetDataset& dataset,
                                      const Priors& priors,
                                      const MCMCConfig& mcmc);

/// Pooled fit: one (ln a, ln b) pair for the entire dataset.
PosteriorSamples fit_bayes_pooled(const fleet::FleetDataset& dataset,
                                  const Priors& priors, const MCMCConfig& mcmc);

/// Three-stage hierarchical fit: Metropolis-within-Gibbs over the
/// compartment pairs and the four hyperparameters; sigma proposals reflect
/// at their Uniform bounds.
PosteriorSamples fit_bayes_hierarchical(const fleet::FleetDataset& dataset,
                                        const HyperPriors& hyperpriors,
                                        const MCMCConfig& mcmc);

struct PredictiveSummary {
  std::vector<double> quantiles;  // requested probabilities
  std::vector<double> lambda_q;   // expected-count quantiles across draws
  std::vector<double> count_q;    // sampled-count quantiles (nearest rank)
  double lambda_mean = 0.0;
  double count_mean = 0.0;
};

/// Posterior predictive for new defect counts of one unit over a future
/// window: per draw, Λ(t1, t2) and one Poisson count sampled from it.
PredictiveSummary posterior_predictive_counts(
    const PosteriorSamples& samples, const std::string& unit_id,
    const nhpp::TimeInterval& interval, const std::vector<double>& quantiles,
    std::uint64_t seed);

/// Split-chain R-hat and autocorrelation ESS; chains[c] is one chain's
/// draw sequence for a scalar parameter.
ParamDiagnostics chain_diagnostics(const std::vector<std::vector<double>>& chains);

/// Recomputes per-parameter diagnostics from stored draws (>= 2 chains).
std::map<std::string, ParamDiagnostics> diagnostics(
    const PosteriorSamples& samples);

/// Samples CSV: compartment_id,chain,draw,ln_a,ln_b with the four
/// hyperparameter columns appended for hierarchical fits.
void write_samples_csv(const PosteriorSamples& samples, std::ostream& out,
                       const std::vector<std::string>& comment_lines = {});
void save_samples_csv(const PosteriorSamples& samples, const std::string& path,
                      const std::vector<std::string>& comment_lines = {});
PosteriorSamples parse_samples_csv(std::istream& in);
PosteriorSamples load_samples_csv(const std::string& path);

/// Diagnostics summary as a JSON document string (sorted keys).
std::string diagnostics_json(const PosteriorSamples& samples);

}  // namespace coatplan::infer
