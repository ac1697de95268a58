#pragma once

#include <functional>
#include <vector>

// Independent numerical oracles for the test suites. These deliberately do
// not share code with the library's integration or special-function paths.
namespace oracle {

/// Composite 10-point Gauss-Legendre with panel doubling until two
/// refinements agree to rel_tol (plus a small absolute floor).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-12, double abs_floor = 1e-300);

/// Erlang(k, rate) CDF at x via the Poisson-sum identity.
double erlang_cdf(int k, double rate, double x);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// Asymptotic one-sample KS p-value for statistic d with sample size n.
double ks_pvalue(double d, long n);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& values);

double sample_sd(const std::vector<double>& values);

}  // namespace oracle
