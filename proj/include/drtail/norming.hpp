#pragma once

#include <optional>

namespace drtail {

/// Scale a_n = r(k/n) and centering b_n = (Q(1-1/n) - Q(1-k/n)) / r(k/n) for
/// one (model, n, k) triple, plus the finite-n ratio r(1/n)/r(k/n).
///
/// n and k are stored as reals so that the norming algebra can also be probed
/// at non-integer k (e.g. k = sqrt(n) exactly).
struct NormingConstants {
  double a_n = 0.0;
  double b_n = 0.0;
  std::optional<double> lambda;  // empty when r(1/n) could not be evaluated
  double n = 0.0;
  double k = 0.0;
};

}  // namespace drtail
