#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {

// 10-point Gauss-Legendre abscissas/weights on (0, 1] halves.
constexpr double kX[5] = {0.1488743389816312, 0.4333953941292472,
                          0.6794095682990244, 0.8650633666889845,
                          0.9739065285171717};
constexpr double kW[5] = {0.2955242247147529, 0.2692667193099963,
                          0.2190863625159820, 0.1494513491505806,
                          0.0666713443086881};

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
  const double xm = 0.5 * (a + b);
  const double xr = 0.5 * (b - a);
  double sum = 0.0;
  for (int j = 0; j < 5; ++j) {
    const double dx = xr * kX[j];
    sum += kW[j] * (f(xm + dx) + f(xm - dx));
  }
  return sum * xr;
}

double composite(const std::function<double(double)>& f, double a, double b,
                 int panels) {
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    sum += gauss_panel(f, lo, hi);
  }
  return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol, double abs_floor) {
  if (lo == hi) return 0.0;
  int panels = 4;
  double prev = composite(f, lo, hi, panels);
  for (int round = 0; round < 12; ++round) {
    panels *= 2;
    const double cur = composite(f, lo, hi, panels);
    if (std::fabs(cur - prev) <=
        rel_tol * std::max(std::fabs(cur), abs_floor) + abs_floor) {
      return cur;
    }
    prev = cur;
  }
  return prev;
}

double erlang_cdf(int k, double rate, double x) {
  if (x <= 0.0) return 0.0;
  const double lx = rate * x;
  // 1 - sum_{j<k} e^{-lx} lx^j / j!
  double term = std::exp(-lx);
  double sum = term;
  for (int j = 1; j < k; ++j) {
    term *= lx / j;
    sum += term;
  }
  return 1.0 - sum;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

double ks_pvalue(double d, long n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    sum += sign * std::exp(-2.0 * j * j * lambda * lambda);
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  const double n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

double sample_sd(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

}  // namespace oracle
