#pragma once

#include <functional>

namespace coatplan::nhpp {

/// Power-law NHPP parameters: intensity(t) = a * b * t^(b-1).
/// a scales the expected count per month^b; b is the shape (b = 1 is the
/// homogeneous process, b > 1 means the rate grows with age).
struct PowerLawParams {
  double a;
  double b;
  PowerLawParams(double a, double b);
};

/// Half-open observation window [t1, t2), times in months since launch.
struct TimeInterval {
  double t1;
  double t2;
  TimeInterval(double t1, double t2);
  double length() const { return t2 - t1; }
};

/// Arrival intensity at age t > 0. For b < 1 the intensity diverges at 0,
/// so t = 0 is outside the domain for every shape.
double intensity(const PowerLawParams& params, double t);

/// Cumulative intensity a * (t2^b - t1^b) = expected defects in the window.
double cumulative_intensity(const PowerLawParams& params,
                            const TimeInterval& interval);

/// Poisson log-pmf of observing n defects in the window.
double count_log_pmf(const PowerLawParams& params, const TimeInterval& interval,
                     long n);
double count_pmf(const PowerLawParams& params, const TimeInterval& interval,
                 long n);

/// CDF of the k-th arrival after reference time t1 (k >= 1, t >= t1):
/// gamma-distributed in the transformed time, γ(k, Λ(t1,t)) / (k-1)!.
double kth_arrival_cdf(const PowerLawParams& params, double t1, int k,
                       double t);

/// Density of the k-th arrival after t1, for t > t1.
double kth_arrival_pdf(const PowerLawParams& params, double t1, int k,
                       double t);

struct ExpectedAge {
  double value = 0.0;
  /// Closed form rejected by the cancellation guard; quadrature used.
  bool used_quadrature = false;
  /// Both routes were computed and disagreed beyond 1e-6 relative.
  bool unstable = false;
};

/// Expected age of the k-th defect at the end of the window: the mean of
/// (t2 - T_k) * 1[T_k <= t2]. Evaluates the closed form (binomial sum over
/// incomplete gammas); falls back to quadrature of (t2 - t) * pdf when the
/// alternating sum's predicted cancellation exceeds the stability guard.
ExpectedAge expected_defect_age_detail(const PowerLawParams& params,
                                       const TimeInterval& interval, int k);
double expected_defect_age(const PowerLawParams& params,
                           const TimeInterval& interval, int k);

struct AgeCostSum {
  double value = 0.0;
  int terms = 0;
  /// max_terms bound before the tolerance stopping rule was met.
  bool cap_reached = false;
};

/// Sum of repair_cost(expected age of the l-th defect) over l = 1, 2, ...
/// Stops at the first term below tol * (accumulated sum + tol); capped at
/// max_terms. repair_cost must be monotone nondecreasing in age.
AgeCostSum expected_total_age_cost(const PowerLawParams& params,
                                   const TimeInterval& interval,
                                   const std::function<double(double)>& repair_cost,
                                   double tol, int max_terms = 10000);

}  // namespace coatplan::nhpp
