#include "coatplan/planner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "coatplan/parallel.hpp"
#include "coatplan/rng.hpp"

namespace coatplan::plan {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kImprovementEps = 1e-9;

/// Memoized expected compartment costs on the grid. Key (m, i, j): cost of
/// inspecting compartment m at t_j when its previous inspection was at t_i
/// (i = 0 stands for the launch floor, time 0). Values are deterministic
/// functions of the inputs, so racy duplicate computation is idempotent.
class CostCache {
 public:
  CostCache(const econ::FleetModels& fleet, const econ::CostConfig& config,
            const PlanningHorizon& horizon)
      : fleet_(fleet),
        config_(config),
        horizon_(horizon),
        n_(static_cast<int>(fleet.size())),
        stride_(static_cast<size_t>(horizon.K) + 1),
        values_(static_cast<size_t>(n_) * stride_ * stride_) {
    for (auto& v : values_) v.store(kNaN, std::memory_order_relaxed);
    std::map<std::string, std::vector<int>> by_ship;
    for (int m = 0; m < n_; ++m) {
      by_ship[fleet[static_cast<size_t>(m)].ship_id].push_back(m);
    }
    for (auto& [ship, members] : by_ship) {
      ships_.push_back(std::move(members));
    }
  }

  double compartment_cost(int m, int i, int j) const {
    auto& slot = values_[(static_cast<size_t>(m) * stride_ +
                          static_cast<size_t>(i)) *
                             stride_ +
                         static_cast<size_t>(j)];
    double v = slot.load(std::memory_order_relaxed);
    if (std::isnan(v)) {
      const double prev = i == 0 ? 0.0 : horizon_.time_at(i);
      v = econ::expected_compartment_cost(fleet_[static_cast<size_t>(m)], prev,
                                          horizon_.time_at(j), config_);
      slot.store(v, std::memory_order_relaxed);
    }
    return v;
  }

  /// Plan cost with the same event structure and summation order as
  /// econ::plan_total_cost.
  template <class InspectedFn>
  double evaluate(InspectedFn inspected) const {
    thread_local std::vector<int> last;
    last.assign(static_cast<size_t>(n_), 0);
    double total = 0.0;
    for (int k = 1; k <= horizon_.K; ++k) {
      for (const auto& members : ships_) {
        bool any = false;
        double event = 0.0;
        for (int m : members) {
          if (!inspected(m, k)) continue;
          any = true;
          event += compartment_cost(m, last[static_cast<size_t>(m)], k);
          last[static_cast<size_t>(m)] = k;
        }
        if (any) total += config_.ship_setup_cost + event;
      }
    }
    return total;
  }

  int n_compartments() const { return n_; }
  const PlanningHorizon& horizon() const { return horizon_; }

 private:
  const econ::FleetModels& fleet_;
  econ::CostConfig config_;
  PlanningHorizon horizon_;
  int n_;
  size_t stride_;
  mutable std::vector<std::atomic<double>> values_;
  std::vector<std::vector<int>> ships_;
};

struct IntervalRepr {
  using Genome = std::vector<int>;
  const CostCache& cache;
  const std::vector<int>& unit_of;  // compartment -> genome position
  int n_units;
  int K;

  Genome random(Rng& rng) const {
    Genome g(static_cast<size_t>(n_units));
    for (auto& y : g) y = 1 + static_cast<int>(rng.integer(
                              static_cast<std::uint64_t>(K)));
    return g;
  }

  std::vector<Genome> seeds(int budget) const {
    std::vector<Genome> out;
    for (int y = 1; y <= K && static_cast<int>(out.size()) < budget; ++y) {
      out.emplace_back(static_cast<size_t>(n_units), y);
    }
    return out;
  }

  double cost(const Genome& g) const {
    return cache.evaluate([&](int m, int k) {
      const int y = g[static_cast<size_t>(unit_of[static_cast<size_t>(m)])];
      return k % y == 0 || k == K;
    });
  }

  void crossover(const Genome& p1, const Genome& p2, Genome& child,
                 Rng& rng) const {
    child = p1;
    for (size_t i = 0; i < child.size(); ++i) {
      if (rng.uniform() < 0.5) child[i] = p2[i];
    }
  }

  void mutate(Genome& g, double rate, Rng& rng) const {
    for (auto& y : g) {
      if (rng.uniform() >= rate) continue;
      if (rng.uniform() < 0.5) {
        y = 1 + static_cast<int>(rng.integer(static_cast<std::uint64_t>(K)));
      } else {
        y = std::clamp(y + (rng.uniform() < 0.5 ? 1 : -1), 1, K);
      }
    }
  }

  void repair(Genome&) const {}  // every y in {1..K} is feasible
};

struct ScheduleRepr {
  using Genome = std::vector<std::uint8_t>;
  const CostCache& cache;
  const std::vector<int>& unit_of;
  int n_units;
  int K;

  Genome random(Rng& rng) const {
    Genome g(static_cast<size_t>(n_units) * static_cast<size_t>(K));
    for (auto& bit : g) bit = rng.uniform() < 0.5 ? 1 : 0;
    return g;
  }

  std::vector<Genome> seeds(int budget) const {
    std::vector<Genome> out;
    for (int y = 1; y <= K && static_cast<int>(out.size()) < budget; ++y) {
      Genome g(static_cast<size_t>(n_units) * static_cast<size_t>(K), 0);
      for (int u = 0; u < n_units; ++u) {
        for (int k = y; k <= K; k += y) {
          g[static_cast<size_t>(u) * static_cast<size_t>(K) +
            static_cast<size_t>(k - 1)] = 1;
        }
      }
      out.push_back(std::move(g));
    }
    return out;
  }

  double cost(const Genome& g) const {
    return cache.evaluate([&](int m, int k) {
      return g[static_cast<size_t>(unit_of[static_cast<size_t>(m)]) *
                   static_cast<size_t>(K) +
               static_cast<size_t>(k - 1)] != 0;
    });
  }

  void crossover(const Genome& p1, const Genome& p2, Genome& child,
                 Rng& rng) const {
    child = p1;
    for (size_t i = 0; i < child.size(); ++i) {
      if (rng.uniform() < 0.5) child[i] = p2[i];
    }
  }

  void mutate(Genome& g, double rate, Rng& rng) const {
    for (auto& bit : g) {
      if (rng.uniform() < rate) bit ^= 1;
    }
  }

  void repair(Genome& g) const {
    for (int u = 0; u < n_units; ++u) {
      g[static_cast<size_t>(u) * static_cast<size_t>(K) +
        static_cast<size_t>(K - 1)] = 1;
    }
  }
};

template <class Repr>
struct GaResult {
  typename Repr::Genome best;
  double best_cost = 0.0;
  long generations = 0;
  long evaluations = 0;
  std::vector<double> trace;
};

template <class Repr>
GaResult<Repr> run_ga(const Repr& repr, const GAConfig& ga) {
  using Genome = typename Repr::Genome;
  const int pop_size = ga.population_size;

  std::vector<Genome> population = repr.seeds(pop_size);
  for (int i = static_cast<int>(population.size()); i < pop_size; ++i) {
    Rng rng = Rng::substream(ga.seed, 0, static_cast<std::uint64_t>(i));
    population.push_back(repr.random(rng));
  }
  population.resize(static_cast<size_t>(pop_size));
  for (auto& g : population) repr.repair(g);

  std::vector<double> costs(static_cast<size_t>(pop_size), kNaN);
  GaResult<Repr> result;

  const auto evaluate_all = [&]() {
    parallel_for(pop_size, ga.threads, [&](std::int64_t i) {
      if (std::isnan(costs[static_cast<size_t>(i)])) {
        costs[static_cast<size_t>(i)] =
            repr.cost(population[static_cast<size_t>(i)]);
        // not exact under races, but evaluation counts are advisory
      }
    });
  };
  evaluate_all();
  result.evaluations += pop_size;

  const auto best_index = [&]() {
    int best = 0;
    for (int i = 1; i < pop_size; ++i) {
      if (costs[static_cast<size_t>(i)] < costs[static_cast<size_t>(best)]) {
        best = i;
      }
    }
    return best;
  };

  int bi = best_index();
  result.best = population[static_cast<size_t>(bi)];
  result.best_cost = costs[static_cast<size_t>(bi)];
  result.trace.push_back(result.best_cost);

  const auto tournament = [&](Rng& rng) -> int {
    int winner = static_cast<int>(rng.integer(static_cast<std::uint64_t>(pop_size)));
    for (int t = 1; t < ga.tournament_size; ++t) {
      const int cand =
          static_cast<int>(rng.integer(static_cast<std::uint64_t>(pop_size)));
      if (costs[static_cast<size_t>(cand)] < costs[static_cast<size_t>(winner)]) {
        winner = cand;
      }
    }
    return winner;
  };

  long stagnant = 0;
  for (long g = 1; g <= ga.max_generations; ++g) {
    // Elites: lowest cost first, ties by index, copied unchanged.
    std::vector<int> order(static_cast<size_t>(pop_size));
    std::iota(order.begin(), order.end(), 0);
    const int n_elite = std::min(ga.elitism_count, pop_size);
    std::partial_sort(order.begin(), order.begin() + n_elite, order.end(),
                      [&](int a, int b) {
                        if (costs[static_cast<size_t>(a)] !=
                            costs[static_cast<size_t>(b)]) {
                          return costs[static_cast<size_t>(a)] <
                                 costs[static_cast<size_t>(b)];
                        }
                        return a < b;
                      });

    std::vector<Genome> children(static_cast<size_t>(pop_size));
    std::vector<double> child_costs(static_cast<size_t>(pop_size), kNaN);
    for (int e = 0; e < n_elite; ++e) {
      children[static_cast<size_t>(e)] =
          population[static_cast<size_t>(order[static_cast<size_t>(e)])];
      child_costs[static_cast<size_t>(e)] =
          costs[static_cast<size_t>(order[static_cast<size_t>(e)])];
    }
    for (int i = n_elite; i < pop_size; ++i) {
      Rng rng = Rng::substream(ga.seed, static_cast<std::uint64_t>(g),
                               static_cast<std::uint64_t>(i));
      const int p1 = tournament(rng);
      const int p2 = tournament(rng);
      Genome child;
      if (rng.uniform() < ga.crossover_rate) {
        repr.crossover(population[static_cast<size_t>(p1)],
                       population[static_cast<size_t>(p2)], child, rng);
      } else {
        child = population[static_cast<size_t>(p1)];
      }
      repr.mutate(child, ga.mutation_rate, rng);
      repr.repair(child);
      children[static_cast<size_t>(i)] = std::move(child);
    }
    population = std::move(children);
    costs = std::move(child_costs);
    evaluate_all();
    result.evaluations += pop_size - n_elite;
    result.generations = g;

    bi = best_index();
    const double gen_best = costs[static_cast<size_t>(bi)];
    if (gen_best < result.best_cost - kImprovementEps) {
      stagnant = 0;
    } else {
      ++stagnant;
    }
    if (gen_best < result.best_cost) {
      result.best_cost = gen_best;
      result.best = population[static_cast<size_t>(bi)];
    }
    result.trace.push_back(result.best_cost);
    if (stagnant >= ga.stagnation_limit) break;
  }
  return result;
}

std::vector<int> unit_map(const CompartmentGroups* groups, int n_compartments) {
  if (!groups) {
    std::vector<int> m(static_cast<size_t>(n_compartments));
    std::iota(m.begin(), m.end(), 0);
    return m;
  }
  return groups->group_of(n_compartments);
}

}  // namespace

void GAConfig::validate() const {
  if (population_size < 2) {
    throw std::invalid_argument("GAConfig: population_size >= 2");
  }
  if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 ||
      mutation_rate > 1.0) {
    throw std::invalid_argument("GAConfig: rates must lie in [0,1]");
  }
  if (elitism_count < 1 || tournament_size < 1 || max_generations < 1 ||
      stagnation_limit < 1) {
    throw std::invalid_argument("GAConfig: counts must be >= 1");
  }
}

GAConfig GAConfig::fast() {
  GAConfig cfg;
  cfg.population_size = 200;
  cfg.stagnation_limit = 500;
  return cfg;
}

std::vector<int> CompartmentGroups::group_of(int n_compartments) const {
  std::vector<int> out(static_cast<size_t>(n_compartments), -1);
  for (int g = 0; g < n_groups(); ++g) {
    for (int m : members[static_cast<size_t>(g)]) {
      if (m < 0 || m >= n_compartments || out[static_cast<size_t>(m)] != -1) {
        throw std::invalid_argument("CompartmentGroups: not a partition");
      }
      out[static_cast<size_t>(m)] = g;
    }
  }
  for (int g : out) {
    if (g < 0) throw std::invalid_argument("CompartmentGroups: uncovered compartment");
  }
  return out;
}

CompartmentGroups CompartmentGroups::singletons(int n_compartments) {
  CompartmentGroups out;
  for (int m = 0; m < n_compartments; ++m) out.members.push_back({m});
  return out;
}

CompartmentGroups group_compartments(const econ::FleetModels& fleet,
                                     const PlanningHorizon& horizon,
                                     int n_groups) {
  if (n_groups < 1) throw std::invalid_argument("group_compartments: n_groups >= 1");
  const int n = static_cast<int>(fleet.size());
  if (n == 0) throw std::invalid_argument("group_compartments: empty fleet");
  n_groups = std::min(n_groups, n);

  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(static_cast<size_t>(n));
  const nhpp::TimeInterval window(horizon.t_now, horizon.t_end);
  for (int m = 0; m < n; ++m) {
    const double lam = nhpp::cumulative_intensity(
        fleet[static_cast<size_t>(m)].point(), window);
    ranked.emplace_back(lam, m);
  }
  std::stable_sort(ranked.begin(), ranked.end());

  CompartmentGroups out;
  out.members.resize(static_cast<size_t>(n_groups));
  for (int g = 0; g < n_groups; ++g) {
    const int lo = n * g / n_groups;
    const int hi = n * (g + 1) / n_groups;
    for (int r = lo; r < hi; ++r) {
      out.members[static_cast<size_t>(g)].push_back(ranked[static_cast<size_t>(r)].second);
    }
    std::sort(out.members[static_cast<size_t>(g)].begin(),
              out.members[static_cast<size_t>(g)].end());
  }
  return out;
}

SchedulePlan expand_interval_policy(const IntervalPolicy& policy, int K) {
  SchedulePlan p = SchedulePlan::none(static_cast<int>(policy.y.size()), K);
  for (int m = 0; m < p.n_compartments(); ++m) {
    const int y = policy.y[static_cast<size_t>(m)];
    if (y < 1 || y > K) {
      throw std::invalid_argument("IntervalPolicy: y must lie in {1..K}");
    }
    for (int k = y; k <= K; k += y) p.set(m, k, true);
  }
  p.force_final();
  return p;
}

SchedulePlan expand_group_policy(const IntervalPolicy& policy,
                                 const CompartmentGroups& groups,
                                 int n_compartments, int K) {
  if (static_cast<int>(policy.y.size()) != groups.n_groups()) {
    throw std::invalid_argument("expand_group_policy: policy/groups size mismatch");
  }
  const auto unit_of = groups.group_of(n_compartments);
  IntervalPolicy per_comp;
  per_comp.y.resize(static_cast<size_t>(n_compartments));
  for (int m = 0; m < n_compartments; ++m) {
    per_comp.y[static_cast<size_t>(m)] =
        policy.y[static_cast<size_t>(unit_of[static_cast<size_t>(m)])];
  }
  return expand_interval_policy(per_comp, K);
}

PlanOutcome optimize_intervals(const econ::FleetModels& fleet,
                               const econ::CostConfig& config,
                               const PlanningHorizon& horizon,
                               const GAConfig& ga,
                               const CompartmentGroups* groups) {
  ga.validate();
  config.validate();
  const int n = static_cast<int>(fleet.size());
  const auto unit_of = unit_map(groups, n);
  const int n_units = groups ? groups->n_groups() : n;
  const CostCache cache(fleet, config, horizon);
  const IntervalRepr repr{cache, unit_of, n_units, horizon.K};
  auto ga_result = run_ga(repr, ga);

  PlanOutcome out;
  IntervalPolicy per_comp;
  per_comp.y.resize(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    per_comp.y[static_cast<size_t>(m)] =
        ga_result.best[static_cast<size_t>(unit_of[static_cast<size_t>(m)])];
  }
  out.plan = expand_interval_policy(per_comp, horizon.K);
  out.cost = econ::plan_total_cost(out.plan, fleet, config, horizon);
  out.generations = ga_result.generations;
  out.evaluations = ga_result.evaluations;
  out.policy = IntervalPolicy{std::move(ga_result.best)};
  out.best_cost_trace = std::move(ga_result.trace);
  return out;
}

PlanOutcome optimize_schedule(const econ::FleetModels& fleet,
                              const econ::CostConfig& config,
                              const PlanningHorizon& horizon,
                              const GAConfig& ga,
                              const CompartmentGroups& groups) {
  ga.validate();
  config.validate();
  const int n = static_cast<int>(fleet.size());
  const auto unit_of = groups.group_of(n);
  const CostCache cache(fleet, config, horizon);
  const ScheduleRepr repr{cache, unit_of, groups.n_groups(), horizon.K};
  auto ga_result = run_ga(repr, ga);

  PlanOutcome out;
  out.plan = SchedulePlan::none(n, horizon.K);
  for (int m = 0; m < n; ++m) {
    const int u = unit_of[static_cast<size_t>(m)];
    for (int k = 1; k <= horizon.K; ++k) {
      out.plan.set(m, k,
                   ga_result.best[static_cast<size_t>(u) *
                                      static_cast<size_t>(horizon.K) +
                                  static_cast<size_t>(k - 1)] != 0);
    }
  }
  out.plan.force_final();
  out.cost = econ::plan_total_cost(out.plan, fleet, config, horizon);
  out.generations = ga_result.generations;
  out.evaluations = ga_result.evaluations;
  out.best_cost_trace = std::move(ga_result.trace);
  return out;
}

double interval_policy_cost(const IntervalPolicy& policy,
                            const econ::FleetModels& fleet,
                            const econ::CostConfig& config,
                            const PlanningHorizon& horizon) {
  config.validate();
  const int n = static_cast<int>(fleet.size());
  if (static_cast<int>(policy.y.size()) != n) {
    throw std::invalid_argument("interval_policy_cost: policy/fleet size mismatch");
  }
  for (int y : policy.y) {
    if (y < 1 || y > horizon.K) {
      throw std::invalid_argument("IntervalPolicy: y must lie in {1..K}");
    }
  }
  std::map<std::string, std::vector<int>> by_ship;
  for (int m = 0; m < n; ++m) {
    by_ship[fleet[static_cast<size_t>(m)].ship_id].push_back(m);
  }
  std::vector<double> last(static_cast<size_t>(n), 0.0);
  double total = 0.0;
  for (int k = 1; k <= horizon.K; ++k) {
    const double t_k = horizon.time_at(k);
    for (const auto& [ship, members] : by_ship) {
      bool any = false;
      double event = 0.0;
      for (int m : members) {
        const int y = policy.y[static_cast<size_t>(m)];
        if (k % y != 0 && k != horizon.K) continue;
        any = true;
        event += econ::expected_compartment_cost(
            fleet[static_cast<size_t>(m)], last[static_cast<size_t>(m)], t_k,
            config);
        last[static_cast<size_t>(m)] = t_k;
      }
      if (any) total += config.ship_setup_cost + event;
    }
  }
  return total;
}

SchedulePlan practice_plan(const std::vector<double>& interval_months,
                           const PlanningHorizon& horizon) {
  const int n = static_cast<int>(interval_months.size());
  SchedulePlan p = SchedulePlan::none(n, horizon.K);
  for (int m = 0; m < n; ++m) {
    const double ratio = interval_months[static_cast<size_t>(m)] / horizon.delta_t;
    const int y = static_cast<int>(std::llround(ratio));
    if (y < 1 || std::fabs(ratio - static_cast<double>(y)) > 1e-9) {
      throw std::invalid_argument(
          "practice_plan: interval is not a grid multiple: " +
          std::to_string(interval_months[static_cast<size_t>(m)]));
    }
    for (int k = y; k <= horizon.K; k += y) p.set(m, k, true);
  }
  p.force_final();
  return p;
}

PlanOutcome brute_force_plan(const econ::FleetModels& fleet,
                             const econ::CostConfig& config,
                             const PlanningHorizon& horizon,
                             const CompartmentGroups& groups) {
  config.validate();
  const int n = static_cast<int>(fleet.size());
  const auto unit_of = groups.group_of(n);
  const int n_units = groups.n_groups();
  const int bits = n_units * (horizon.K - 1);
  if (bits > 24) {
    throw std::length_error("brute_force_plan: n_groups * (K - 1) must be <= 24");
  }
  const CostCache cache(fleet, config, horizon);
  const std::uint64_t limit = 1ULL << bits;
  double best_cost = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const double cost = cache.evaluate([&](int m, int k) {
      if (k == horizon.K) return true;
      const int u = unit_of[static_cast<size_t>(m)];
      return ((mask >> (static_cast<std::uint64_t>(u) *
                            static_cast<std::uint64_t>(horizon.K - 1) +
                        static_cast<std::uint64_t>(k - 1))) &
              1ULL) != 0;
    });
    if (cost < best_cost) {
      best_cost = cost;
      best_mask = mask;
    }
  }

  PlanOutcome out;
  out.plan = SchedulePlan::none(n, horizon.K);
  for (int m = 0; m < n; ++m) {
    const int u = unit_of[static_cast<size_t>(m)];
    for (int k = 1; k < horizon.K; ++k) {
      out.plan.set(m, k,
                   ((best_mask >> (static_cast<std::uint64_t>(u) *
                                       static_cast<std::uint64_t>(horizon.K - 1) +
                                   static_cast<std::uint64_t>(k - 1))) &
                    1ULL) != 0);
    }
  }
  out.plan.force_final();
  out.cost = econ::plan_total_cost(out.plan, fleet, config, horizon);
  out.evaluations = static_cast<long>(limit);
  return out;
}

PlanOutcome brute_force_intervals(const econ::FleetModels& fleet,
                                  const econ::CostConfig& config,
                                  const PlanningHorizon& horizon,
                                  const CompartmentGroups& groups) {
  config.validate();
  const int n = static_cast<int>(fleet.size());
  const auto unit_of = groups.group_of(n);
  const int n_units = groups.n_groups();
  double combos = 1.0;
  for (int u = 0; u < n_units; ++u) combos *= static_cast<double>(horizon.K);
  if (combos > 2e7) {
    throw std::length_error("brute_force_intervals: K^n_groups too large");
  }
  const CostCache cache(fleet, config, horizon);

  std::vector<int> y(static_cast<size_t>(n_units), 1);
  std::vector<int> best_y = y;
  double best_cost = std::numeric_limits<double>::infinity();
  while (true) {
    const double cost = cache.evaluate([&](int m, int k) {
      const int yy = y[static_cast<size_t>(unit_of[static_cast<size_t>(m)])];
      return k % yy == 0 || k == horizon.K;
    });
    if (cost < best_cost) {
      best_cost = cost;
      best_y = y;
    }
    int pos = 0;
    while (pos < n_units) {
      if (++y[static_cast<size_t>(pos)] <= horizon.K) break;
      y[static_cast<size_t>(pos)] = 1;
      ++pos;
    }
    if (pos == n_units) break;
  }

  PlanOutcome out;
  out.policy = IntervalPolicy{best_y};
  out.plan = expand_group_policy(*out.policy, groups, n, horizon.K);
  out.cost = econ::plan_total_cost(out.plan, fleet, config, horizon);
  out.evaluations = static_cast<long>(combos);
  return out;
}

long plan_event_count(const SchedulePlan& p, const econ::FleetModels& fleet) {
  std::map<std::string, std::vector<int>> by_ship;
  for (int m = 0; m < p.n_compartments(); ++m) {
    by_ship[fleet[static_cast<size_t>(m)].ship_id].push_back(m);
  }
  long events = 0;
  for (int k = 1; k <= p.K; ++k) {
    for (const auto& [ship, members] : by_ship) {
      for (int m : members) {
        if (p.inspects(m, k)) {
          ++events;
          break;
        }
      }
    }
  }
  return events;
}

std::vector<long> plan_timeline(const SchedulePlan& p) {
  std::vector<long> timeline(static_cast<size_t>(p.K), 0);
  for (int m = 0; m < p.n_compartments(); ++m) {
    for (int k = 1; k <= p.K; ++k) {
      if (p.inspects(m, k)) ++timeline[static_cast<size_t>(k - 1)];
    }
  }
  return timeline;
}

std::vector<SweepRow> sensitivity_sweep(
    SweepAxis axis, const std::vector<double>& values,
    const econ::FleetModels& fleet, const econ::CostConfig& base_config,
    const PlanningHorizon& horizon, const GAConfig& ga, int n_groups,
    const std::vector<double>& practice_months) {
  if (values.empty()) {
    throw std::invalid_argument("sensitivity_sweep: values must be nonempty");
  }
  if (practice_months.empty()) {
    throw std::invalid_argument("sensitivity_sweep: practice assignment empty");
  }
  const int n = static_cast<int>(fleet.size());
  std::vector<double> months(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    months[static_cast<size_t>(m)] =
        practice_months[static_cast<size_t>(m) % practice_months.size()];
  }
  const SchedulePlan practice = practice_plan(months, horizon);
  const CompartmentGroups groups = group_compartments(fleet, horizon, n_groups);

  std::vector<SweepRow> rows;
  for (size_t idx = 0; idx < values.size(); ++idx) {
    econ::CostConfig cfg = base_config;
    if (axis == SweepAxis::kRepairBeta) {
      cfg.repair_beta = values[idx];
    } else {
      cfg.ship_setup_cost = values[idx];
    }
    cfg.validate();

    GAConfig ga_interval = ga;
    ga_interval.seed = splitmix64(ga.seed + 0x1000 + idx);
    GAConfig ga_schedule = ga;
    ga_schedule.seed = splitmix64(ga.seed + 0x2000 + idx);

    SweepRow row;
    row.value = values[idx];
    row.practice_cost = econ::plan_total_cost(practice, fleet, cfg, horizon);
    row.practice_events = plan_event_count(practice, fleet);
    row.practice_timeline = plan_timeline(practice);

    const PlanOutcome interval =
        optimize_intervals(fleet, cfg, horizon, ga_interval, &groups);
    row.interval_cost = interval.cost;
    row.interval_events = plan_event_count(interval.plan, fleet);
    row.interval_timeline = plan_timeline(interval.plan);

    const PlanOutcome schedule =
        optimize_schedule(fleet, cfg, horizon, ga_schedule, groups);
    row.schedule_cost = schedule.cost;
    row.schedule_events = plan_event_count(schedule.plan, fleet);
    row.schedule_timeline = plan_timeline(schedule.plan);

    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace coatplan::plan
