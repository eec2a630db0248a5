#include "drtail/normal.hpp"

#include <cmath>
#include <numbers>

#include "drtail/error.hpp"

namespace drtail::normal {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// Acklam's rational approximation for p in (0, 0.5], relative error ~1e-9.
double lower_rational(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Phi^{-1}(p) for p in (0, 0.5]; the Halley step uses erfc of a non-negative
// argument, which keeps full relative accuracy deep in the tail.
double lower_quantile(double p) {
  double x = lower_rational(p);
  const double e = 0.5 * std::erfc(-x * kInvSqrt2) - p;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace

double pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double survival(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::DomainError, "normal quantile needs p in (0, 1)");
  }
  return p <= 0.5 ? lower_quantile(p) : -lower_quantile(1.0 - p);
}

double upper_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorKind::DomainError, "normal upper quantile needs u in (0, 1)");
  }
  return u <= 0.5 ? -lower_quantile(u) : lower_quantile(1.0 - u);
}

double upper_quantile_expansion(double u) {
  if (!(u > 0.0 && u < 1.0 / std::numbers::e)) {
    throw Error(ErrorKind::DomainError, "expansion needs u in (0, 1/e)");
  }
  const double L = std::log(1.0 / u);
  const double root = std::sqrt(2.0 * L);
  return root - (std::log(L) + std::log(4.0 * std::numbers::pi)) / (2.0 * root);
}

}  // namespace drtail::normal
