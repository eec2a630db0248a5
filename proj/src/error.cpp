#include "drtail/error.hpp"

namespace drtail {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::FixedOutOfRange: return "FixedOutOfRange";
    case ErrorKind::TooSmallN: return "TooSmallN";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::NotSorted: return "NotSorted";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NoCdf: return "NoCdf";
    case ErrorKind::TailUnderflow: return "TailUnderflow";
    case ErrorKind::NonPositiveEndpoint: return "NonPositiveEndpoint";
    case ErrorKind::InsufficientSample: return "InsufficientSample";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
  }
  return "Unknown";
}

}  // namespace drtail
