#pragma once

namespace coatplan::special {

/// Lower incomplete gamma γ(s, x) = ∫_0^x u^(s-1) e^(-u) du, s > 0, x >= 0.
/// Overflows to +inf for very large s; use the regularized form there.
double lower_incomplete_gamma(double s, double x);

/// Regularized P(s, x) = γ(s, x) / Γ(s), computed without overflow.
/// Series expansion for x < s + 1, continued fraction otherwise.
double regularized_lower_gamma(double s, double x);

/// Regularized Q(s, x) = 1 - P(s, x), accurate in the right tail.
double regularized_upper_gamma(double s, double x);

/// ln(γ(s, x2) - γ(s, x1)) for 0 <= x1 <= x2. The difference is taken on
/// whichever regularized side (P or Q) avoids cancellation; returns -inf
/// when it underflows.
double log_lower_gamma_difference(double s, double x1, double x2);

/// ln C(n, k) for integers 0 <= k <= n, via lgamma.
double log_binomial(long n, long k);

}  // namespace coatplan::special
