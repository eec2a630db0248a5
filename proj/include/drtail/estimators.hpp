#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "drtail/error.hpp"
#include "drtail/norming.hpp"
#include "drtail/sample.hpp"

namespace drtail {

struct EstimateResult {
  double t_n = 0.0;
  std::size_t k = 0;
  double log_k = 0.0;
  std::size_t n = 0;
};

namespace detail {

template <OrderStatistics S>
void require_k(const S& s, std::size_t k) {
  if (k < 2 || k >= s.size()) {
    throw Error(ErrorKind::KOutOfRange,
                "k = " + std::to_string(k) + " outside [2, " + std::to_string(s.size()) + ")");
  }
  if (k > s.depth()) {
    throw Error(ErrorKind::KOutOfRange,
                "k = " + std::to_string(k) + " exceeds the " + std::to_string(s.depth() + 1) +
                    " stored order statistics");
  }
}

template <OrderStatistics S>
void require_positive(const S& s) {
  if (!(s.smallest_stored() > 0.0)) {
    throw Error(ErrorKind::NonPositiveValue, "log-scale estimator needs strictly positive values");
  }
}

}  // namespace detail

/// X_{n,n} - X_{n-k,n}. With zero-based ascending storage this is
/// values[n-1] - values[n-1-k].
template <OrderStatistics S>
double top_spacing(const S& s, std::size_t k) {
  detail::require_k(s, k);
  return s.from_top(0) - s.from_top(k);
}

/// T_n = (X_{n,n} - X_{n-k,n}) / ln k.
template <OrderStatistics S>
EstimateResult de_haan_resnick(const S& s, std::size_t k) {
  const double spacing = top_spacing(s, k);
  const double log_k = std::log(static_cast<double>(k));
  return {spacing / log_k, k, log_k, s.size()};
}

/// T_n of the element-wise natural log of a positive sample.
template <OrderStatistics S>
EstimateResult de_haan_resnick_log_scale(const S& s, std::size_t k) {
  detail::require_k(s, k);
  detail::require_positive(s);
  const double log_k = std::log(static_cast<double>(k));
  const double spacing = std::log(s.from_top(0)) - std::log(s.from_top(k));
  return {spacing / log_k, k, log_k, s.size()};
}

/// H_n = k^{-1} sum_{i=1..k} (X_{n-i+1,n} - X_{n-k,n}).
template <OrderStatistics S>
double hill(const S& s, std::size_t k) {
  detail::require_k(s, k);
  const double base = s.from_top(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += s.from_top(i) - base;
  return sum / static_cast<double>(k);
}

/// (X_{n,n} - X_{n-k,n} - a_n b_n) / a_n, the left side of the Gumbel limit
/// (ln k / a_n) T_n - b_n written without the T_n round trip.
template <OrderStatistics S>
double normalized_statistic(const S& s, std::size_t k, const NormingConstants& nc) {
  if (!(nc.a_n > 0.0)) {
    throw Error(ErrorKind::ZeroScale, "a_n must be positive");
  }
  if (nc.n != static_cast<double>(s.size()) || nc.k != static_cast<double>(k)) {
    throw Error(ErrorKind::DomainError, "norming constants were computed for a different (n, k)");
  }
  return (top_spacing(s, k) - nc.a_n * nc.b_n) / nc.a_n;
}

}  // namespace drtail
