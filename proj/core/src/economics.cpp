#include "coatplan/economics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace coatplan::econ {

namespace {

void require_valid_plan(const plan::SchedulePlan& p, const FleetModels& fleet,
                        const plan::PlanningHorizon& horizon) {
  if (p.n_compartments() != static_cast<int>(fleet.size())) {
    throw std::invalid_argument("plan/fleet compartment counts differ");
  }
  if (p.K != horizon.K) {
    throw std::invalid_argument("plan grid does not match horizon");
  }
  if (!p.final_inspection_ok()) {
    throw std::invalid_argument(
        "infeasible plan: a compartment lacks the final inspection");
  }
}

}  // namespace

void CostConfig::validate() const {
  if (ship_setup_cost < 0.0 || compartment_inspection_cost < 0.0 ||
      repair_alpha < 0.0 || !(repair_beta > 0.0) || !(age_sum_tolerance > 0.0) ||
      age_sum_max_terms < 1) {
    throw std::invalid_argument("CostConfig: invalid values");
  }
}

nhpp::PowerLawParams CompartmentModel::point() const {
  if (draws.empty()) {
    throw std::invalid_argument("CompartmentModel: no parameter draws");
  }
  if (draws.size() == 1) return draws[0];
  double sum_ln_a = 0.0;
  double sum_ln_b = 0.0;
  for (const auto& d : draws) {
    sum_ln_a += std::log(d.a);
    sum_ln_b += std::log(d.b);
  }
  const double n = static_cast<double>(draws.size());
  return nhpp::PowerLawParams(std::exp(sum_ln_a / n), std::exp(sum_ln_b / n));
}

double repair_cost(double age, const CostConfig& config) {
  if (age < 0.0) throw std::domain_error("repair_cost: requires age >= 0");
  if (age == 0.0) return 0.0;
  return config.repair_alpha * std::pow(age, config.repair_beta);
}

double expected_compartment_cost(const CompartmentModel& model, double prev,
                                 double now, const CostConfig& config) {
  if (!(prev < now)) {
    throw std::invalid_argument("expected_compartment_cost: requires prev < now");
  }
  const nhpp::TimeInterval window(prev, now);
  const auto f = [&](double age) { return repair_cost(age, config); };
  double repair_sum = 0.0;
  for (const auto& params : model.draws) {
    repair_sum += nhpp::expected_total_age_cost(params, window, f,
                                                config.age_sum_tolerance,
                                                config.age_sum_max_terms)
                      .value;
  }
  repair_sum /= static_cast<double>(model.draws.size());
  return config.compartment_inspection_cost + repair_sum;
}

double expected_event_cost(const std::vector<int>& selected,
                           const std::vector<double>& last_times,
                           const FleetModels& fleet, double t_k,
                           const CostConfig& config) {
  if (selected.empty()) return 0.0;
  double total = config.ship_setup_cost;
  for (int m : selected) {
    total += expected_compartment_cost(fleet[static_cast<size_t>(m)],
                                       last_times[static_cast<size_t>(m)], t_k,
                                       config);
  }
  return total;
}

double last_inspection_time(const plan::SchedulePlan& plan,
                            const plan::PlanningHorizon& horizon, int comp,
                            int k, double floor_time) {
  if (k < 1) throw std::invalid_argument("last_inspection_time: requires k >= 1");
  double last = floor_time;
  for (int l = 1; l < k; ++l) {
    if (plan.inspects(comp, l)) last = horizon.time_at(l);
  }
  return last;
}

double plan_total_cost(const plan::SchedulePlan& p, const FleetModels& fleet,
                       const CostConfig& config,
                       const plan::PlanningHorizon& horizon,
                       const std::vector<double>* initial_last) {
  config.validate();
  require_valid_plan(p, fleet, horizon);
  const int n = p.n_compartments();

  // Compartments of one ship share the per-event setup cost.
  std::map<std::string, std::vector<int>> by_ship;
  for (int m = 0; m < n; ++m) {
    by_ship[fleet[static_cast<size_t>(m)].ship_id].push_back(m);
  }

  std::vector<double> last(static_cast<size_t>(n), 0.0);
  if (initial_last) {
    if (initial_last->size() != static_cast<size_t>(n)) {
      throw std::invalid_argument("initial_last size mismatch");
    }
    last = *initial_last;
  }

  double total = 0.0;
  for (int k = 1; k <= horizon.K; ++k) {
    const double t_k = horizon.time_at(k);
    for (const auto& [ship, members] : by_ship) {
      bool any = false;
      double event = 0.0;
      for (int m : members) {
        if (!p.inspects(m, k)) continue;
        any = true;
        event += expected_compartment_cost(fleet[static_cast<size_t>(m)],
                                           last[static_cast<size_t>(m)], t_k,
                                           config);
        last[static_cast<size_t>(m)] = t_k;
      }
      if (any) total += config.ship_setup_cost + event;
    }
  }
  return total;
}

double expected_horizon_defects(const nhpp::PowerLawParams& params,
                                const std::vector<double>& inspection_times,
                                const plan::PlanningHorizon& horizon) {
  double prev = horizon.t_now;
  double total = 0.0;
  for (double t : inspection_times) {
    if (!(t > prev)) {
      throw std::invalid_argument(
          "expected_horizon_defects: times must be increasing and > t_now");
    }
    if (t > horizon.t_end + 1e-9) {
      throw std::invalid_argument(
          "expected_horizon_defects: time beyond the horizon");
    }
    total += nhpp::cumulative_intensity(params, nhpp::TimeInterval(prev, t));
    prev = t;
  }
  return total;
}

}  // namespace coatplan::econ
