#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>
#include <utility>

#include "coatplan/inference.hpp"
#include "coatplan/rng.hpp"

namespace coatplan::infer {

namespace {

struct Point {
  std::array<double, 2> x;
  double f;
};

bool inside_box(const std::array<double, 2>& x) {
  return x[0] >= kLnAMin && x[0] <= kLnAMax && x[1] >= kLnBMin &&
         x[1] <= kLnBMax;
}

std::array<double, 2> clamp_box(std::array<double, 2> x) {
  x[0] = std::clamp(x[0], kLnAMin, kLnAMax);
  x[1] = std::clamp(x[1], kLnBMin, kLnBMax);
  return x;
}

/// Nelder-Mead maximization in the 2-d working space; the objective is
/// -1e300 outside the box, which keeps the simplex inside.
struct NelderMead {
  std::function<double(const std::array<double, 2>&)> f;
  int max_iterations;

  std::pair<Point, bool> run(const std::array<double, 2>& start) const {
    constexpr double kStep = 0.5;
    std::array<Point, 3> simplex;
    simplex[0] = {start, f(start)};
    for (int d = 0; d < 2; ++d) {
      auto x = start;
      x[static_cast<size_t>(d)] += kStep;
      simplex[static_cast<size_t>(d) + 1] = {x, f(x)};
    }
    bool converged = false;
    for (int iter = 0; iter < max_iterations; ++iter) {
      std::sort(simplex.begin(), simplex.end(),
                [](const Point& a, const Point& b) { return a.f > b.f; });
      const double spread = simplex[0].f - simplex[2].f;
      double size = 0.0;
      for (int d = 0; d < 2; ++d) {
        size = std::max(size, std::fabs(simplex[0].x[static_cast<size_t>(d)] -
                                        simplex[2].x[static_cast<size_t>(d)]));
      }
      if (spread < 1e-11 * (std::fabs(simplex[0].f) + 1.0) && size < 1e-9) {
        converged = true;
        break;
      }
      const auto& best = simplex[0];
      const auto& second = simplex[1];
      auto& worst = simplex[2];
      std::array<double, 2> centroid{};
      for (int d = 0; d < 2; ++d) {
        centroid[static_cast<size_t>(d)] =
            0.5 * (best.x[static_cast<size_t>(d)] +
                   second.x[static_cast<size_t>(d)]);
      }
      const auto blend = [&](double coef) {
        std::array<double, 2> x{};
        for (int d = 0; d < 2; ++d) {
          x[static_cast<size_t>(d)] =
              centroid[static_cast<size_t>(d)] +
              coef * (centroid[static_cast<size_t>(d)] -
                      worst.x[static_cast<size_t>(d)]);
        }
        return x;
      };
      const auto xr = blend(1.0);
      const double fr = f(xr);
      if (fr > best.f) {
        const auto xe = blend(2.0);
        const double fe = f(xe);
        worst = fe > fr ? Point{xe, fe} : Point{xr, fr};
      } else if (fr > second.f) {
        worst = {xr, fr};
      } else {
        const auto xc = blend(fr > worst.f ? 0.5 : -0.5);
        const double fc = f(xc);
        if (fc > std::max(fr, worst.f)) {
          worst = {xc, fc};
        } else {
          // Shrink toward the best vertex.
          for (int v = 1; v < 3; ++v) {
            auto& p = simplex[static_cast<size_t>(v)];
            for (int d = 0; d < 2; ++d) {
              p.x[static_cast<size_t>(d)] =
                  0.5 * (p.x[static_cast<size_t>(d)] +
                         best.x[static_cast<size_t>(d)]);
            }
            p.f = f(p.x);
          }
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.f > b.f; });
    return {simplex[0], converged};
  }
};

struct DataSummary {
  long total_defects = 0;
  double total_exposure = 0.0;  // sum of raw interval lengths
  int informative_intervals = 0;
};

void summarize(const fleet::CompartmentHistory& h,
               std::set<std::pair<double, double>>& informative,
               DataSummary& s) {
  double prev = h.start_time;
  for (const auto& [t, n] : h.entries) {
    s.total_defects += n;
    s.total_exposure += t - prev;
    if (n > 0) informative.insert({prev, t});
    prev = t;
  }
}

/// Golden-section maximization of a unimodal 1-d objective on [lo, hi].
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi, int max_iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iterations && (b - a) > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

MleResult fit_generic(
    const std::function<double(const nhpp::PowerLawParams&)>& loglik,
    const DataSummary& summary, const MleOptions& options) {
  MleResult result;
  result.degenerate = options.fix_ln_b
                          ? summary.informative_intervals < 1
                          : summary.informative_intervals < 2;

  if (summary.total_defects == 0) {
    // Likelihood decreases in a with nothing observed: the optimum sits at
    // the lower search bound.
    result.log_params = {kLnAMin, options.fix_ln_b.value_or(0.0)};
    result.log_likelihood = loglik(result.log_params.to_params());
    result.converged = true;
    return result;
  }

  if (options.fix_ln_b) {
    const double b_fixed = std::exp(*options.fix_ln_b);
    const auto [ln_a, f] = golden_max(
        [&](double ln_a_cand) {
          return loglik(nhpp::PowerLawParams(std::exp(ln_a_cand), b_fixed));
        },
        kLnAMin, kLnAMax, options.max_iterations);
    result.log_params = {ln_a, *options.fix_ln_b};
    result.log_likelihood = f;
    result.converged = true;
    return result;
  }

  LogParams init;
  if (options.initial) {
    init = *options.initial;
  } else {
    init.ln_a = std::log(static_cast<double>(summary.total_defects) /
                         std::max(summary.total_exposure, 1e-12));
    init.ln_b = 0.0;
  }
  const std::array<double, 2> x0 =
      clamp_box({init.ln_a, init.ln_b});

  const auto objective = [&](const std::array<double, 2>& x) -> double {
    if (!inside_box(x)) return -1e300;
    return loglik(nhpp::PowerLawParams(std::exp(x[0]), std::exp(x[1])));
  };
  const NelderMead nm{objective, options.max_iterations};

  Point best{{0.0, 0.0}, -1e300};
  bool best_converged = false;
  const int starts = std::max(1, options.multistarts);
  for (int s = 0; s < starts; ++s) {
    std::array<double, 2> start = x0;
    if (s > 0) {
      Rng rng = Rng::substream(options.seed, static_cast<std::uint64_t>(s));
      start[0] += options.jitter_sd * rng.normal();
      start[1] += options.jitter_sd * rng.normal();
      start = clamp_box(start);
    }
    const auto [point, converged] = nm.run(start);
    if (point.f > best.f) {
      best = point;
      best_converged = converged;
    }
  }
  result.log_params = {best.x[0], best.x[1]};
  result.log_likelihood = best.f;
  result.converged = best_converged;
  return result;
}

}  // namespace

MleResult fit_mle(const fleet::CompartmentHistory& history,
                  const MleOptions& options) {
  std::set<std::pair<double, double>> informative;
  DataSummary s;
  summarize(history, informative, s);
  s.informative_intervals = static_cast<int>(informative.size());
  return fit_generic(
      [&](const nhpp::PowerLawParams& p) { return log_likelihood(p, history); },
      s, options);
}

MleResult fit_mle(const fleet::FleetDataset& dataset,
                  const MleOptions& options) {
  std::set<std::pair<double, double>> informative;
  DataSummary s;
  for (const auto& h : dataset.compartments) summarize(h, informative, s);
  s.informative_intervals = static_cast<int>(informative.size());
  return fit_generic(
      [&](const nhpp::PowerLawParams& p) {
        return pooled_log_likelihood(p, dataset);
      },
      s, options);
}

}  // namespace coatplan::infer
