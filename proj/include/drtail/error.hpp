#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drtail {

enum class ErrorKind {
  DomainError,
  KOutOfRange,
  FixedOutOfRange,
  TooSmallN,
  NonPositiveValue,
  NotSorted,
  ZeroScale,
  StepUnderflow,
  NoCdf,
  TailUnderflow,
  NonPositiveEndpoint,
  InsufficientSample,
  UnknownModel,
  IdentityViolation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (notably the CLI) can map it to an exit status without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace drtail
