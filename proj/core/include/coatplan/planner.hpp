#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coatplan/economics.hpp"
#include "coatplan/schedule.hpp"

namespace coatplan::plan {

struct GAConfig {
  int population_size = 3000;
  long max_generations = 200000;
  /// Consecutive generations with best-fitness improvement below 1e-9
  /// before termination.
  long stagnation_limit = 10000;
  double crossover_rate = 0.9;
  double mutation_rate = 0.05;  // per gene
  int elitism_count = 2;
  int tournament_size = 3;
  std::uint64_t seed = 0;
  int threads = 0;
  void validate() const;
  /// Desk-scale settings (the CLI's --fast).
  static GAConfig fast();
};

/// Partition of compartment indices into rate bands; every compartment
/// appears in exactly one group.
struct CompartmentGroups {
  std::vector<std::vector<int>> members;

  int n_groups() const { return static_cast<int>(members.size()); }
  std::vector<int> group_of(int n_compartments) const;
  static CompartmentGroups singletons(int n_compartments);
};

/// Ranks compartments by expected horizon defects under their point
/// estimates and splits the ranking into n_groups contiguous bands.
CompartmentGroups group_compartments(const econ::FleetModels& fleet,
                                     const PlanningHorizon& horizon,
                                     int n_groups);

/// x[m][k] = 1 exactly when k is a multiple of y[m], then the mandatory
/// final inspection is forced. One y per compartment.
SchedulePlan expand_interval_policy(const IntervalPolicy& policy, int K);

/// Same expansion with one y per group, shared by the group's members.
SchedulePlan expand_group_policy(const IntervalPolicy& policy,
                                 const CompartmentGroups& groups,
                                 int n_compartments, int K);

struct PlanOutcome {
  SchedulePlan plan;
  double cost = 0.0;
  long generations = 0;
  long evaluations = 0;
  std::optional<IntervalPolicy> policy;  // interval optimizations only
  std::vector<double> best_cost_trace;   // per generation, nonincreasing
};

/// GA over integer interval genomes (one y per compartment, or per group
/// when groups are given). Deterministic under a fixed seed for any
/// thread count.
PlanOutcome optimize_intervals(const econ::FleetModels& fleet,
                               const econ::CostConfig& config,
                               const PlanningHorizon& horizon,
                               const GAConfig& ga,
                               const CompartmentGroups* groups = nullptr);

/// GA over binary schedule genomes of length n_groups * K; members of a
/// group share one inspection row. The final-inspection bit is repaired
/// before evaluation.
PlanOutcome optimize_schedule(const econ::FleetModels& fleet,
                              const econ::CostConfig& config,
                              const PlanningHorizon& horizon,
                              const GAConfig& ga,
                              const CompartmentGroups& groups);

/// Direct cost of an interval policy (one y per compartment) without
/// building the expanded plan; second route for the dual-path check.
double interval_policy_cost(const IntervalPolicy& policy,
                            const econ::FleetModels& fleet,
                            const econ::CostConfig& config,
                            const PlanningHorizon& horizon);

/// The fleet's fixed-practice baseline: per-compartment inspection every
/// `months` (a grid multiple), final inspection enforced.
SchedulePlan practice_plan(const std::vector<double>& interval_months,
                           const PlanningHorizon& horizon);

/// Exhaustive schedule enumeration at group level; exact optimum.
/// Requires n_groups * (K - 1) <= 24.
PlanOutcome brute_force_plan(const econ::FleetModels& fleet,
                             const econ::CostConfig& config,
                             const PlanningHorizon& horizon,
                             const CompartmentGroups& groups);

/// Exhaustive interval-policy enumeration at group level; exact optimum
/// of the Eq.-18-style model. Requires n_groups * log2(K) manageable
/// (K^n_groups evaluations).
PlanOutcome brute_force_intervals(const econ::FleetModels& fleet,
                                  const econ::CostConfig& config,
                                  const PlanningHorizon& horizon,
                                  const CompartmentGroups& groups);

long plan_event_count(const SchedulePlan& p, const econ::FleetModels& fleet);

/// Compartments inspected at each grid index (summed over ships).
std::vector<long> plan_timeline(const SchedulePlan& p);

enum class SweepAxis { kRepairBeta, kShipSetup };

struct SweepRow {
  double value = 0.0;
  double practice_cost = 0.0;
  double interval_cost = 0.0;
  double schedule_cost = 0.0;
  long practice_events = 0;
  long interval_events = 0;
  long schedule_events = 0;
  std::vector<long> practice_timeline;
  std::vector<long> interval_timeline;
  std::vector<long> schedule_timeline;
};

/// Re-optimizes both planners per swept value with fresh seeded GA runs
/// and evaluates the practice baseline under the same cost structure.
std::vector<SweepRow> sensitivity_sweep(
    SweepAxis axis, const std::vector<double>& values,
    const econ::FleetModels& fleet, const econ::CostConfig& base_config,
    const PlanningHorizon& horizon, const GAConfig& ga, int n_groups,
    const std::vector<double>& practice_months);

}  // namespace coatplan::plan
