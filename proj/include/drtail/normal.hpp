#pragma once

namespace drtail::normal {

double pdf(double x);
double cdf(double x);
/// 1 - Phi(x) without cancellation for large x.
double survival(double x);

/// Phi^{-1}(p) for p in (0, 1): rational starting point refined by one Halley
/// step on erfc. Absolute error is at the 1e-15 level across the range.
double quantile(double p);

/// Q(1-u) = Phi^{-1}(1-u), accurate in relative terms for tiny u.
double upper_quantile(double u);

/// Two-term asymptotic expansion of Q(1-u) as u -> 0,
///   sqrt(2L) - (ln L + ln(4 pi)) / (2 sqrt(2L)),  L = ln(1/u).
/// Diagnostic only; never used for sampling.
double upper_quantile_expansion(double u);

}  // namespace drtail::normal
