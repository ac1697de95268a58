#include "coatplan/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "coatplan/parallel.hpp"
#include "coatplan/rng.hpp"

namespace coatplan::sim {

namespace {

void append_arrivals(const nhpp::PowerLawParams& params, double t1, double t2,
                     Rng& rng, std::vector<double>& out) {
  // Unit-rate arrivals in the transformed clock, inverted through
  // Λ(t1, t) = a (t^b - t1^b).
  const double u_start = params.a * std::pow(t1, params.b);
  const double u_end = params.a * std::pow(t2, params.b);
  double u = u_start;
  while (true) {
    u += rng.exponential();
    if (u >= u_end) break;
    out.push_back(std::pow(u / params.a, 1.0 / params.b));
  }
}

struct PathCost {
  double total = 0.0;
  double setup = 0.0;
  double inspection = 0.0;
  double repair = 0.0;
  long defects = 0;
};

}  // namespace

ArrivalPath sample_arrival_path(const nhpp::PowerLawParams& params,
                                const nhpp::TimeInterval& horizon,
                                std::uint64_t seed) {
  ArrivalPath path;
  path.seed = seed;
  Rng rng(seed);
  append_arrivals(params, horizon.t1, horizon.t2, rng, path.times);
  return path;
}

McEstimate estimate_expected_age_mc(const nhpp::PowerLawParams& params,
                                    const nhpp::TimeInterval& interval, int k,
                                    long n_paths, std::uint64_t seed,
                                    int threads) {
  if (k < 1) throw std::invalid_argument("estimate_expected_age_mc: k >= 1");
  if (n_paths < 1000) {
    throw std::invalid_argument("estimate_expected_age_mc: n_paths >= 1000");
  }
  std::vector<double> ages(static_cast<size_t>(n_paths), 0.0);
  const double u_start = params.a * std::pow(interval.t1, params.b);
  const double u_end = params.a * std::pow(interval.t2, params.b);
  parallel_for(n_paths, threads, [&](std::int64_t i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
    double u = u_start;
    for (int arrival = 1; arrival <= k; ++arrival) {
      u += rng.exponential();
      if (u >= u_end) return;  // fewer than k arrivals in the window
    }
    const double t_k = std::pow(u / params.a, 1.0 / params.b);
    ages[static_cast<size_t>(i)] = interval.t2 - t_k;
  });
  McEstimate est;
  est.n_paths = n_paths;
  double sum = 0.0;
  for (double a : ages) sum += a;
  est.mean = sum / static_cast<double>(n_paths);
  double ss = 0.0;
  for (double a : ages) ss += (a - est.mean) * (a - est.mean);
  const double sd = std::sqrt(ss / static_cast<double>(n_paths - 1));
  est.std_error = sd / std::sqrt(static_cast<double>(n_paths));
  return est;
}

SimulationResult simulate_plan(const plan::SchedulePlan& p,
                               const econ::FleetModels& fleet,
                               const econ::CostConfig& config,
                               const plan::PlanningHorizon& horizon,
                               long n_paths, std::uint64_t seed, int threads) {
  config.validate();
  if (n_paths < 1) throw std::invalid_argument("simulate_plan: n_paths >= 1");
  if (p.n_compartments() != static_cast<int>(fleet.size())) {
    throw std::invalid_argument("simulate_plan: plan/fleet size mismatch");
  }
  if (!p.final_inspection_ok()) {
    throw std::invalid_argument("simulate_plan: infeasible plan");
  }
  const int n = p.n_compartments();
  const int K = horizon.K;

  std::map<std::string, std::vector<int>> by_ship;
  for (int m = 0; m < n; ++m) {
    by_ship[fleet[static_cast<size_t>(m)].ship_id].push_back(m);
  }

  std::vector<PathCost> results(static_cast<size_t>(n_paths));
  std::vector<double> defects_per_event(
      static_cast<size_t>(n_paths) * static_cast<size_t>(K), 0.0);

  parallel_for(n_paths, threads, [&](std::int64_t path) {
    PathCost& pc = results[static_cast<size_t>(path)];
    std::vector<double> arrivals;
    for (int m = 0; m < n; ++m) {
      const auto& model = fleet[static_cast<size_t>(m)];
      const auto& params =
          model.draws[static_cast<size_t>(path) % model.draws.size()];
      arrivals.clear();
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(path),
                               static_cast<std::uint64_t>(m));
      // Defects accumulate from launch; the first inspection clears the
      // backlog (minimal repair leaves the intensity untouched).
      append_arrivals(params, 0.0, horizon.time_at(K), rng, arrivals);
      size_t next = 0;
      // Skip arrivals never observed: none before launch floor anyway.
      for (int k = 1; k <= K; ++k) {
        if (!p.inspects(m, k)) continue;
        const double t_k = horizon.time_at(k);
        long found = 0;
        while (next < arrivals.size() && arrivals[next] <= t_k) {
          const double age = t_k - arrivals[next];
          pc.repair += econ::repair_cost(age, config);
          ++next;
          ++found;
        }
        pc.defects += found;
        defects_per_event[static_cast<size_t>(path) * static_cast<size_t>(K) +
                          static_cast<size_t>(k - 1)] +=
            static_cast<double>(found);
        pc.inspection += config.compartment_inspection_cost;
      }
    }
    for (const auto& [ship, members] : by_ship) {
      for (int k = 1; k <= K; ++k) {
        for (int m : members) {
          if (p.inspects(m, k)) {
            pc.setup += config.ship_setup_cost;
            break;
          }
        }
      }
    }
    pc.total = pc.setup + pc.inspection + pc.repair;
  });

  SimulationResult out;
  out.n_paths = n_paths;
  out.mean_defects_per_event.assign(static_cast<size_t>(K), 0.0);
  double sum = 0.0;
  for (const auto& pc : results) {
    sum += pc.total;
    out.mean_setup_cost += pc.setup;
    out.mean_inspection_cost += pc.inspection;
    out.mean_repair_cost += pc.repair;
    out.mean_defects += static_cast<double>(pc.defects);
  }
  const double np = static_cast<double>(n_paths);
  out.mean_cost = sum / np;
  out.mean_setup_cost /= np;
  out.mean_inspection_cost /= np;
  out.mean_repair_cost /= np;
  out.mean_defects /= np;
  for (long path = 0; path < n_paths; ++path) {
    for (int k = 0; k < K; ++k) {
      out.mean_defects_per_event[static_cast<size_t>(k)] +=
          defects_per_event[static_cast<size_t>(path) * static_cast<size_t>(K) +
                            static_cast<size_t>(k)];
    }
  }
  for (auto& v : out.mean_defects_per_event) v /= np;
  if (n_paths > 1) {
    double ss = 0.0;
    for (const auto& pc : results) {
      ss += (pc.total - out.mean_cost) * (pc.total - out.mean_cost);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n_paths - 1));
    out.std_error = sd / std::sqrt(np);
  }
  return out;
}

void SynthConfig::validate() const {
  if (n_ships < 1 || n_compartments < 1) {
    throw std::invalid_argument("SynthConfig: counts must be >= 1");
  }
  if (!(sigma_ln_a >= 0.0) || !(sigma_ln_b >= 0.0)) {
    throw std::invalid_argument("SynthConfig: sigmas must be >= 0");
  }
  if (interval_choices.empty()) {
    throw std::invalid_argument("SynthConfig: needs interval choices");
  }
  for (double v : interval_choices) {
    if (!(v > 0.0)) throw std::invalid_argument("SynthConfig: intervals > 0");
  }
  if (!(horizon_months > 0.0)) {
    throw std::invalid_argument("SynthConfig: horizon must be > 0");
  }
}

SynthResult synthesize_fleet(const SynthConfig& config, std::uint64_t seed) {
  config.validate();
  SynthResult out;
  std::vector<fleet::InspectionRecord> records;
  for (int s = 0; s < config.n_ships; ++s) {
    const std::string ship_id = "S" + std::to_string(s + 1);
    for (int c = 0; c < config.n_compartments; ++c) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "C%03d", c + 1);
      const std::string comp_id(buf);

      Rng param_rng = Rng::substream(seed, static_cast<std::uint64_t>(s),
                                     static_cast<std::uint64_t>(c), 0);
      const double ln_a = config.mu_ln_a + config.sigma_ln_a * param_rng.normal();
      const double ln_b = config.mu_ln_b + config.sigma_ln_b * param_rng.normal();
      const nhpp::PowerLawParams params(std::exp(ln_a), std::exp(ln_b));
      out.true_params.push_back({ship_id, comp_id, {params}});

      Rng path_rng = Rng::substream(seed, static_cast<std::uint64_t>(s),
                                    static_cast<std::uint64_t>(c), 1);
      std::vector<double> arrivals;
      append_arrivals(params, 0.0, config.horizon_months, path_rng, arrivals);

      const double step =
          config.interval_choices[static_cast<size_t>(c) %
                                  config.interval_choices.size()];
      size_t next = 0;
      for (double t = step; t <= config.horizon_months + 1e-9; t += step) {
        long count = 0;
        while (next < arrivals.size() && arrivals[next] <= t) {
          ++next;
          ++count;
        }
        records.push_back({ship_id, comp_id, t, count});
      }
    }
  }
  out.dataset = fleet::make_dataset(records);
  return out;
}

}  // namespace coatplan::sim
