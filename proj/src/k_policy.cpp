#include "drtail/k_policy.hpp"

#include <charconv>
#include <cmath>

#include "drtail/error.hpp"

namespace drtail {
namespace {

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::DomainError, "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::size_t select_k(const KPolicy& policy, std::size_t n) {
  if (n < 4) {
    throw Error(ErrorKind::TooSmallN, "n = " + std::to_string(n) + " is below 4");
  }
  if (const auto* fixed = std::get_if<FixedK>(&policy)) {
    if (fixed->k <= 1 || fixed->k >= n) {
      throw Error(ErrorKind::FixedOutOfRange,
                  "fixed k = " + std::to_string(fixed->k) + " outside [2, " + std::to_string(n) + ")");
    }
    return fixed->k;
  }

  std::size_t k = 0;
  if (std::holds_alternative<SqrtN>(policy)) {
    k = isqrt(n);
  } else {
    const double ell = std::get<LogPow>(policy).exponent;
    if (!(ell > 0.0)) {
      throw Error(ErrorKind::DomainError, "log-power exponent must be positive");
    }
    const double raw = std::floor(std::pow(std::log(static_cast<double>(n)), ell));
    k = raw >= static_cast<double>(n) ? n : static_cast<std::size_t>(raw);
  }
  k = std::max<std::size_t>(k, 2);
  if (k >= n) {
    throw Error(ErrorKind::TooSmallN,
                "policy " + to_string(policy) + " gives k >= n at n = " + std::to_string(n));
  }
  return k;
}

KPolicy parse_k_policy(std::string_view text) {
  if (text == "sqrt") return SqrtN{};
  if (text.starts_with("logpow:")) {
    return LogPow{parse_number<double>(text.substr(7), "log-power exponent")};
  }
  if (text.starts_with("fixed:")) {
    return FixedK{parse_number<std::size_t>(text.substr(6), "fixed k")};
  }
  throw Error(ErrorKind::DomainError, "unknown k policy '" + std::string(text) + "'");
}

std::string to_string(const KPolicy& policy) {
  struct Visitor {
    std::string operator()(SqrtN) const { return "sqrt"; }
    std::string operator()(LogPow p) const {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p.exponent);
      return "logpow:" + std::string(buf, ptr);
    }
    std::string operator()(FixedK f) const { return "fixed:" + std::to_string(f.k); }
  };
  return std::visit(Visitor{}, policy);
}

}  // namespace drtail
