#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

namespace drtail {

/// Read access to the upper order statistics of a sample of size n.
///
/// `from_top(i)` is X_{n-i,n} (so `from_top(0)` is the maximum) and is valid
/// for i <= depth(). A full sample has depth n - 1; a tail-only sample keeps
/// just the top depth() + 1 values.
template <class S>
concept OrderStatistics = requires(const S& s, std::size_t i) {
  { s.size() } -> std::convertible_to<std::size_t>;
  { s.depth() } -> std::convertible_to<std::size_t>;
  { s.from_top(i) } -> std::convertible_to<double>;
  { s.smallest_stored() } -> std::convertible_to<double>;
};

/// Ascending sample X_{1,n} <= ... <= X_{n,n}. Ties are allowed.
class SortedSample {
 public:
  /// Throws NotSorted if `values` is decreasing anywhere (or holds NaN) and
  /// DomainError if it has fewer than two values.
  explicit SortedSample(std::vector<double> values);

  /// Sorts first, then validates.
  static SortedSample from_unsorted(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::size_t depth() const noexcept { return values_.size() - 1; }
  double from_top(std::size_t i) const { return values_[values_.size() - 1 - i]; }
  double smallest_stored() const noexcept { return values_.front(); }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// First `m` order statistics of this sample, i.e. X_{1,n}..X_{m,n}.
  SortedSample prefix(std::size_t m) const;

 private:
  std::vector<double> values_;
};

/// The top `depth + 1` order statistics X_{n-depth,n} <= ... <= X_{n,n} of a
/// sample of size n whose lower part was never materialized.
class UpperOrderStatistics {
 public:
  UpperOrderStatistics(std::vector<double> top_ascending, std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t depth() const noexcept { return top_.size() - 1; }
  double from_top(std::size_t i) const { return top_[top_.size() - 1 - i]; }
  double smallest_stored() const noexcept { return top_.front(); }

  std::span<const double> top() const noexcept { return top_; }

 private:
  std::vector<double> top_;
  std::size_t n_;
};

static_assert(OrderStatistics<SortedSample>);
static_assert(OrderStatistics<UpperOrderStatistics>);

}  // namespace drtail
