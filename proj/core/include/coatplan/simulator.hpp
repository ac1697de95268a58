#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coatplan/economics.hpp"
#include "coatplan/fleet_data.hpp"
#include "coatplan/nhpp.hpp"
#include "coatplan/schedule.hpp"

namespace coatplan::sim {

/// One sampled defect-arrival path over a window; times strictly increase.
struct ArrivalPath {
  std::vector<double> times;
  std::uint64_t seed = 0;
};

/// Exact path sampling by cumulative-intensity inversion: unit-rate
/// arrivals u_1 < u_2 < ... map through t = ((u + a t1^b) / a)^(1/b).
ArrivalPath sample_arrival_path(const nhpp::PowerLawParams& params,
                                const nhpp::TimeInterval& horizon,
                                std::uint64_t seed);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n_paths = 0;
};

/// Monte-Carlo estimate of the expected k-th defect age: the mean of
/// (t2 - T_k) * 1[T_k <= t2] across paths (unconditional, matching the
/// closed form's truncated integral).
McEstimate estimate_expected_age_mc(const nhpp::PowerLawParams& params,
                                    const nhpp::TimeInterval& interval, int k,
                                    long n_paths, std::uint64_t seed,
                                    int threads = 0);

struct SimulationResult {
  double mean_cost = 0.0;
  double std_error = 0.0;
  double mean_setup_cost = 0.0;
  double mean_inspection_cost = 0.0;
  double mean_repair_cost = 0.0;
  double mean_defects = 0.0;
  long n_paths = 0;
  /// Mean defects collected at each grid index (1..K), summed over
  /// compartments.
  std::vector<double> mean_defects_per_event;
};

/// Simulates plan execution with minimal repair: per path, arrivals are
/// sampled per compartment from launch, each inspection collects the
/// defects arrived since that compartment's last inspection and charges
/// c_ins plus alpha * age^beta per defect; any inspection at a grid time
/// costs the ship setup once. Compartments with several parameter draws
/// cycle through them stratified by path index.
SimulationResult simulate_plan(const plan::SchedulePlan& p,
                               const econ::FleetModels& fleet,
                               const econ::CostConfig& config,
                               const plan::PlanningHorizon& horizon,
                               long n_paths, std::uint64_t seed,
                               int threads = 0);

/// Synthetic-fleet generator standing in for confidential inspection data:
/// per-compartment (ln a, ln b) drawn from a Normal population, arrival
/// paths sampled and binned at the inspection regime's times.
struct SynthConfig {
  int n_ships = 1;
  int n_compartments = 20;
  double mu_ln_a = -7.0;
  double sigma_ln_a = 0.5;
  double mu_ln_b = 0.3;
  double sigma_ln_b = 0.1;
  /// Inspection interval (months) assigned to compartment c is
  /// interval_choices[c % size].
  std::vector<double> interval_choices = {12.0, 24.0, 30.0, 60.0};
  double horizon_months = 120.0;
  void validate() const;
};

struct SynthResult {
  fleet::FleetDataset dataset;
  econ::FleetModels true_params;
};

SynthResult synthesize_fleet(const SynthConfig& config, std::uint64_t seed);

}  // namespace coatplan::sim
