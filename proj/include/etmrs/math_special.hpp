#pragma once

namespace etmrs {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise;
/// accurate to ~1e-14 relative over a in [0.5, 1e3], x in [0, 1e6].
double regularized_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated with
/// full relative precision in the deep tail (values down to ~1e-300).
double regularized_upper_gamma(double a, double x);

/// 1 - exp(-x) * sum_{i=0}^{k-1} x^i / i!, the regularized lower gamma
/// P(k, x) written as a finite series for integer k >= 1.
double gamma_series_cdf(int k, double x);

}  // namespace etmrs
