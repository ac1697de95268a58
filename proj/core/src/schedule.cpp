#include "coatplan/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace coatplan::plan {

PlanningHorizon::PlanningHorizon(double t_now_in, double t_end_in,
                                 double delta_t_in)
    : t_now(t_now_in), t_end(t_end_in), delta_t(delta_t_in) {
  if (!(t_now >= 0.0) || !(t_now < t_end) || !(delta_t > 0.0)) {
    throw std::invalid_argument(
        "PlanningHorizon: requires 0 <= t_now < t_end and delta_t > 0");
  }
  const double steps = (t_end - t_now) / delta_t;
  K = static_cast<int>(std::llround(steps));
  if (K < 1 || std::fabs(steps - static_cast<double>(K)) >
                   1e-9 * std::max(1.0, steps)) {
    throw std::invalid_argument(
        "PlanningHorizon: t_end - t_now must be an integer number of steps");
  }
}

SchedulePlan SchedulePlan::none(int n_compartments, int K) {
  SchedulePlan p;
  p.K = K;
  p.x.assign(static_cast<size_t>(n_compartments),
             std::vector<std::uint8_t>(static_cast<size_t>(K), 0));
  return p;
}

SchedulePlan SchedulePlan::final_only(int n_compartments, int K) {
  SchedulePlan p = none(n_compartments, K);
  p.force_final();
  return p;
}

void SchedulePlan::force_final() {
  for (auto& row : x) {
    if (!row.empty()) row.back() = 1;
  }
}

bool SchedulePlan::final_inspection_ok() const {
  for (const auto& row : x) {
    if (row.empty() || row.back() == 0) return false;
  }
  return true;
}

std::vector<int> SchedulePlan::inspection_indices(int comp) const {
  std::vector<int> out;
  const auto& row = x[static_cast<size_t>(comp)];
  for (size_t i = 0; i < row.size(); ++i) {
    if (row[i]) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

long SchedulePlan::total_inspections() const {
  long total = 0;
  for (const auto& row : x) {
    for (auto v : row) total += v ? 1 : 0;
  }
  return total;
}

}  // namespace coatplan::plan
