#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

namespace drtail {

/// Rules for the intermediate sequence k(n) with k -> inf and k/n -> 0.
struct SqrtN {};
struct LogPow {
  double exponent;  // k = floor((ln n)^exponent)
};
struct FixedK {
  std::size_t k;
};

using KPolicy = std::variant<SqrtN, LogPow, FixedK>;

/// floor(sqrt n), floor((ln n)^l) or the fixed k. Computed values below 2 are
/// clamped to 2 so that ln k > 0; the result is then required to be < n.
///
/// Errors: TooSmallN for n < 4 or when no admissible k < n exists,
/// FixedOutOfRange for a fixed k outside [2, n), DomainError for l <= 0.
std::size_t select_k(const KPolicy& policy, std::size_t n);

/// Parses "sqrt", "logpow:<l>" or "fixed:<k>".
KPolicy parse_k_policy(std::string_view text);
std::string to_string(const KPolicy& policy);

}  // namespace drtail
