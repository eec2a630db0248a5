#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace drtail {

/// Identifies one reproducible uniform stream.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// xoshiro256** seeded through SplitMix64.
///
/// The four state words are the first four SplitMix64 outputs started from
/// mix(seed) ^ mix(stream_id ^ 0xD1B54A32D192ED03), where mix is the
/// SplitMix64 finalizer. Doubles are ((x >> 11) + 0.5) * 2^-53, which lies
/// strictly inside (0, 1). Only integer arithmetic and one exact scaling are
/// involved, so the stream is bit-identical across platforms.
class UniformStream {
 public:
  using result_type = std::uint64_t;

  explicit UniformStream(const RngSpec& spec);
  /// Starts from a raw xoshiro256** state (must not be all zero).
  static UniformStream from_state(const std::array<std::uint64_t, 4>& state);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in (0, 1).
  double uniform();

 private:
  UniformStream() = default;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace drtail
