#pragma once

#include <cstdint>
#include <vector>

namespace coatplan::plan {

/// Uniform decision grid t_k = t_now + k * delta_t for k = 0..K. t_0 is
/// not an inspection candidate; t_K carries the mandatory final inspection.
struct PlanningHorizon {
  double t_now;
  double t_end;
  double delta_t;
  int K;

  PlanningHorizon(double t_now, double t_end, double delta_t);
  double time_at(int k) const { return t_now + static_cast<double>(k) * delta_t; }
};

/// Binary inspection choices: x[m][k-1] = 1 means compartment m is
/// inspected at grid time t_k (k = 1..K). Every feasible plan has the
/// final column set.
struct SchedulePlan {
  int K = 0;
  std::vector<std::vector<std::uint8_t>> x;

  static SchedulePlan none(int n_compartments, int K);
  static SchedulePlan final_only(int n_compartments, int K);

  int n_compartments() const { return static_cast<int>(x.size()); }
  bool inspects(int comp, int k) const {
    return x[static_cast<size_t>(comp)][static_cast<size_t>(k - 1)] != 0;
  }
  void set(int comp, int k, bool on) {
    x[static_cast<size_t>(comp)][static_cast<size_t>(k - 1)] = on ? 1 : 0;
  }
  void force_final();
  bool final_inspection_ok() const;
  std::vector<int> inspection_indices(int comp) const;
  long total_inspections() const;
  bool operator==(const SchedulePlan&) const = default;
};

/// Fixed-interval policy: unit i is inspected every y[i] grid steps.
/// Units are compartments, or groups when a grouping is in force.
struct IntervalPolicy {
  std::vector<int> y;
  bool operator==(const IntervalPolicy&) const = default;
};

}  // namespace coatplan::plan
