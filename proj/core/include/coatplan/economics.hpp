#pragma once

#include <string>
#include <vector>

#include "coatplan/nhpp.hpp"
#include "coatplan/schedule.hpp"

namespace coatplan::econ {

/// Cost units are relative (the model compares plans; no currency).
struct CostConfig {
  double ship_setup_cost = 500.0;            // c_s, per inspection event
  double compartment_inspection_cost = 10.0; // c_ins, per compartment visit
  double repair_alpha = 1.0;                 // cost units per month^beta
  double repair_beta = 1.25;                 // age exponent
  double age_sum_tolerance = 1e-9;           // stopping rule for the age sum
  int age_sum_max_terms = 10000;
  void validate() const;
};

/// Defect-arrival model of one compartment for costing. One draw is a
/// point estimate; several draws average the expected cost over the
/// posterior (configurable alternative to the point estimate).
struct CompartmentModel {
  std::string ship_id;
  std::string compartment_id;
  std::vector<nhpp::PowerLawParams> draws;

  nhpp::PowerLawParams point() const;
  std::string unit_id() const { return ship_id + "/" + compartment_id; }
};

using FleetModels = std::vector<CompartmentModel>;

/// Repair cost of one defect of the given age: alpha * age^beta.
double repair_cost(double age, const CostConfig& config);

/// Expected cost of inspecting one compartment at `now` when its previous
/// inspection was at `prev`: c_ins plus the expected-age repair sum.
double expected_compartment_cost(const CompartmentModel& model, double prev,
                                 double now, const CostConfig& config);

/// Expected cost of one inspection event on one ship: the setup cost if
/// anything is inspected, plus the selected compartments' costs.
/// `selected` holds indices into `fleet`; last_times is per-compartment
/// (aligned with fleet).
double expected_event_cost(const std::vector<int>& selected,
                           const std::vector<double>& last_times,
                           const FleetModels& fleet, double t_k,
                           const CostConfig& config);

/// Last inspection time (months) of a compartment strictly before grid
/// index k, with `floor_time` (launch by default) when none exists.
double last_inspection_time(const plan::SchedulePlan& plan,
                            const plan::PlanningHorizon& horizon, int comp,
                            int k, double floor_time = 0.0);

/// Total expected cost of a plan over the horizon: per grid point, each
/// ship with any selected compartment pays the setup cost, and each
/// selected compartment pays its inspection-plus-repair cost. Throws if a
/// compartment lacks the mandatory final inspection. `initial_last` gives
/// per-compartment last inspection times before the horizon (default:
/// launch, 0).
double plan_total_cost(const plan::SchedulePlan& plan, const FleetModels& fleet,
                       const CostConfig& config,
                       const plan::PlanningHorizon& horizon,
                       const std::vector<double>* initial_last = nullptr);

/// Expected defects accumulated over the horizon under the given
/// inspection times (defects found are repaired and not re-counted, so
/// the interval expectations telescope).
double expected_horizon_defects(const nhpp::PowerLawParams& params,
                                const std::vector<double>& inspection_times,
                                const plan::PlanningHorizon& horizon);

}  // namespace coatplan::econ
