#include "drtail/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drtail/error.hpp"

namespace drtail {
namespace {

void require_ascending(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) {
      throw Error(ErrorKind::NotSorted, "NaN at position " + std::to_string(i));
    }
    if (i > 0 && v[i] < v[i - 1]) {
      throw Error(ErrorKind::NotSorted,
                  "value at position " + std::to_string(i) + " is below its predecessor");
    }
  }
}

}  // namespace

SortedSample::SortedSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorKind::DomainError, "a sample needs at least two values");
  }
  require_ascending(values_);
}

SortedSample SortedSample::from_unsorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return SortedSample(std::move(values));
}

SortedSample SortedSample::prefix(std::size_t m) const {
  if (m < 2 || m > values_.size()) {
    throw Error(ErrorKind::DomainError, "prefix length " + std::to_string(m) + " out of range");
  }
  return SortedSample(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(m)));
}

UpperOrderStatistics::UpperOrderStatistics(std::vector<double> top_ascending, std::size_t n)
    : top_(std::move(top_ascending)), n_(n) {
  if (top_.size() < 2 || top_.size() > n_) {
    throw Error(ErrorKind::DomainError, "need 2 <= stored order statistics <= n");
  }
  require_ascending(top_);
}

}  // namespace drtail
