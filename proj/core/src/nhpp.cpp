#include "coatplan/nhpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "coatplan/quadrature.hpp"
#include "coatplan/special_functions.hpp"

namespace coatplan::nhpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cancellation guard for the closed-form expected age: fall back to
// quadrature when max-term / result exceeds this ratio, and cross-check
// both routes in the decade window below it.
constexpr double kLogGuard = 18.420680743952367;   // ln 1e8
constexpr double kLogCrossCheck = 9.210340371976184;  // ln 1e4

void require_arrival_index(int k) {
  if (k < 1) throw std::invalid_argument("arrival index k must be >= 1");
}

double log_intensity(const PowerLawParams& p, double t) {
  return std::log(p.a) + std::log(p.b) + (p.b - 1.0) * std::log(t);
}

double cumulative(const PowerLawParams& p, double t1, double t2) {
  return p.a * (std::pow(t2, p.b) - std::pow(t1, p.b));
}

// Shared tables for the Eq.-12-style closed form over one window: the
// gamma differences at orders j + 1/b are reused by every arrival index,
// which is what makes the age-cost summation cheap.
struct AgeTables {
  PowerLawParams params;
  double t1, t2;
  double x1, x2;    // a * t1^b, a * t2^b
  double lam;       // x2 - x1
  double log_x1;    // -inf when t1 == 0
  double log_base;  // x1 - (1/b) ln a
  std::vector<double> log_dgamma;  // [j-1] = ln(γ(j + 1/b, x2) - γ(j + 1/b, x1))

  AgeTables(const PowerLawParams& p, const TimeInterval& iv)
      : params(p), t1(iv.t1), t2(iv.t2) {
    x1 = p.a * std::pow(t1, p.b);
    x2 = p.a * std::pow(t2, p.b);
    lam = x2 - x1;
    log_x1 = x1 > 0.0 ? std::log(x1) : -kInf;
    log_base = x1 - std::log(p.a) / p.b;
  }

  void ensure(int j_max) {
    const double inv_b = 1.0 / params.b;
    while (static_cast<int>(log_dgamma.size()) < j_max) {
      const double s = static_cast<double>(log_dgamma.size() + 1) + inv_b;
      log_dgamma.push_back(special::log_lower_gamma_difference(s, x1, x2));
    }
  }
};

struct ClosedAge {
  double value = 0.0;
  // ln(max component / result); large values mean the alternating sum or
  // the outer subtraction ate the significant digits.
  double log_cancellation = 0.0;
  bool ok = false;
};

ClosedAge closed_form_age(AgeTables& tab, int k) {
  ClosedAge out;
  const double f_end = special::regularized_lower_gamma(
      static_cast<double>(k), tab.lam);
  if (f_end == 0.0) {
    // The k-th arrival essentially never lands in the window.
    out.value = 0.0;
    out.ok = true;
    return out;
  }

  tab.ensure(k);
  const double log_pref = tab.log_base - std::lgamma(static_cast<double>(k));

  // S = ∫ t f_k(t) dt over the window, via the binomial expansion; terms
  // alternate in sign with i.
  const int n_terms = tab.x1 > 0.0 ? k : 1;
  std::vector<double> log_terms(static_cast<size_t>(n_terms));
  double max_log = -kInf;
  for (int i = 0; i < n_terms; ++i) {
    const int j = k - i;  // gamma order index: s = j + 1/b
    double lt = log_pref + static_cast<double>(i) * tab.log_x1 +
                tab.log_dgamma[static_cast<size_t>(j - 1)];
    if (i > 0) lt += special::log_binomial(k - 1, i);
    log_terms[static_cast<size_t>(i)] = lt;
    max_log = std::max(max_log, lt);
  }
  if (max_log == -kInf) {
    out.value = 0.0;
    out.ok = true;
    return out;
  }
  double signed_sum = 0.0;
  for (int i = 0; i < n_terms; ++i) {
    const double scaled = std::exp(log_terms[static_cast<size_t>(i)] - max_log);
    signed_sum += (i % 2 == 0) ? scaled : -scaled;
  }
  if (!(signed_sum > 0.0)) {
    out.log_cancellation = kInf;  // fully cancelled
    return out;
  }
  const double log_s = max_log + std::log(signed_sum);
  const double s_integral = std::exp(log_s);

  // Ā_k = (t2 - t1) F - (S - t1 F); the shifted arrangement keeps the
  // outer subtraction on the window scale instead of the t2 scale.
  const double d = s_integral - tab.t1 * f_end;
  const double value = (tab.t2 - tab.t1) * f_end - d;

  const double max_component =
      std::max(max_log, std::log(std::max((tab.t2 - tab.t1) * f_end, 1e-300)));
  if (!(value > 0.0)) {
    out.log_cancellation = kInf;
    return out;
  }
  out.value = value;
  out.log_cancellation = max_component - std::log(value);
  out.ok = true;
  return out;
}

double quadrature_age(const PowerLawParams& p, const TimeInterval& iv, int k) {
  const auto integrand = [&](double t) -> double {
    if (t <= iv.t1) return 0.0;
    const double lam_cum = cumulative(p, iv.t1, t);
    double log_pdf = log_intensity(p, t) - lam_cum;
    if (k > 1) {
      if (lam_cum <= 0.0) return 0.0;
      log_pdf += static_cast<double>(k - 1) * std::log(lam_cum) -
                 std::lgamma(static_cast<double>(k));
    }
    const double pdf = std::exp(log_pdf);
    return (iv.t2 - t) * pdf;
  };
  double est = quad::integrate(integrand, iv.t1, iv.t2, 1e-10);
  if (est > 0.0 && est < 1e-2) {
    // Refine small values so the result keeps relative accuracy.
    est = quad::integrate(integrand, iv.t1, iv.t2, std::max(est * 1e-9, 1e-280));
  }
  return std::clamp(est, 0.0, iv.length());
}

}  // namespace

PowerLawParams::PowerLawParams(double a_in, double b_in) : a(a_in), b(b_in) {
  if (!(a > 0.0) || !std::isfinite(a) || !(b > 0.0) || !std::isfinite(b)) {
    throw std::domain_error("PowerLawParams: requires finite a > 0 and b > 0");
  }
}

TimeInterval::TimeInterval(double t1_in, double t2_in) : t1(t1_in), t2(t2_in) {
  if (!(t1 >= 0.0) || !(t1 < t2) || !std::isfinite(t1) || !std::isfinite(t2)) {
    throw std::domain_error("TimeInterval: requires 0 <= t1 < t2, finite");
  }
}

double intensity(const PowerLawParams& params, double t) {
  if (!(t > 0.0)) throw std::domain_error("intensity: requires t > 0");
  return params.a * params.b * std::pow(t, params.b - 1.0);
}

double cumulative_intensity(const PowerLawParams& params,
                            const TimeInterval& interval) {
  return cumulative(params, interval.t1, interval.t2);
}

double count_log_pmf(const PowerLawParams& params, const TimeInterval& interval,
                     long n) {
  if (n < 0) throw std::invalid_argument("count_log_pmf: requires n >= 0");
  const double lam = cumulative_intensity(params, interval);
  if (lam <= 0.0) return n == 0 ? 0.0 : -kInf;
  return static_cast<double>(n) * std::log(lam) - lam -
         std::lgamma(static_cast<double>(n) + 1.0);
}

double count_pmf(const PowerLawParams& params, const TimeInterval& interval,
                 long n) {
  return std::exp(count_log_pmf(params, interval, n));
}

double kth_arrival_cdf(const PowerLawParams& params, double t1, int k,
                       double t) {
  require_arrival_index(k);
  if (!(t1 >= 0.0)) throw std::domain_error("kth_arrival_cdf: requires t1 >= 0");
  if (!(t >= t1)) throw std::domain_error("kth_arrival_cdf: requires t >= t1");
  if (t == t1) return 0.0;
  return special::regularized_lower_gamma(static_cast<double>(k),
                                          cumulative(params, t1, t));
}

double kth_arrival_pdf(const PowerLawParams& params, double t1, int k,
                       double t) {
  require_arrival_index(k);
  if (!(t1 >= 0.0)) throw std::domain_error("kth_arrival_pdf: requires t1 >= 0");
  if (!(t > t1)) throw std::domain_error("kth_arrival_pdf: requires t > t1");
  const double lam_cum = cumulative(params, t1, t);
  double log_pdf = log_intensity(params, t) - lam_cum;
  if (k > 1) {
    if (lam_cum <= 0.0) return 0.0;
    log_pdf += static_cast<double>(k - 1) * std::log(lam_cum) -
               std::lgamma(static_cast<double>(k));
  }
  return std::exp(log_pdf);
}

ExpectedAge expected_defect_age_detail(const PowerLawParams& params,
                                       const TimeInterval& interval, int k) {
  require_arrival_index(k);
  ExpectedAge out;
  AgeTables tab(params, interval);
  const ClosedAge closed = closed_form_age(tab, k);
  if (closed.ok && closed.log_cancellation <= kLogCrossCheck) {
    out.value = std::clamp(closed.value, 0.0, interval.length());
    return out;
  }
  const double quad_value = quadrature_age(params, interval, k);
  if (closed.ok && closed.log_cancellation <= kLogGuard) {
    // Gray zone: keep the quadrature value but flag disagreement.
    const double scale = std::max({closed.value, quad_value, 1e-300});
    if (std::fabs(closed.value - quad_value) > 1e-6 * scale) {
      out.unstable = true;
      out.used_quadrature = true;
      out.value = quad_value;
    } else {
      out.value = std::clamp(closed.value, 0.0, interval.length());
    }
    return out;
  }
  out.used_quadrature = true;
  out.value = quad_value;
  return out;
}

double expected_defect_age(const PowerLawParams& params,
                           const TimeInterval& interval, int k) {
  return expected_defect_age_detail(params, interval, k).value;
}

AgeCostSum expected_total_age_cost(
    const PowerLawParams& params, const TimeInterval& interval,
    const std::function<double(double)>& repair_cost, double tol,
    int max_terms) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("expected_total_age_cost: requires tol > 0");
  }
  if (max_terms < 1) {
    throw std::invalid_argument("expected_total_age_cost: requires max_terms >= 1");
  }
  AgeCostSum out;
  AgeTables tab(params, interval);
  for (int l = 1; l <= max_terms; ++l) {
    double age;
    const ClosedAge closed = closed_form_age(tab, l);
    if (closed.ok && closed.log_cancellation <= kLogGuard) {
      age = std::clamp(closed.value, 0.0, interval.length());
    } else {
      age = quadrature_age(params, interval, l);
    }
    const double term = repair_cost(age);
    out.value += term;
    out.terms = l;
    if (term < tol * (out.value + tol)) return out;
  }
  out.cap_reached = true;
  return out;
}

}  // namespace coatplan::nhpp
