#include "drtail/rng.hpp"

namespace drtail {
namespace {

constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

UniformStream::UniformStream(const RngSpec& spec) {
  std::uint64_t state = mix(spec.seed) ^ mix(spec.stream_id ^ 0xD1B54A32D192ED03ULL);
  for (auto& word : s_) {
    state += 0x9E3779B97F4A7C15ULL;
    word = mix(state);
  }
}

UniformStream UniformStream::from_state(const std::array<std::uint64_t, 4>& state) {
  UniformStream stream;
  stream.s_ = state;
  return stream;
}

UniformStream::result_type UniformStream::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double UniformStream::uniform() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace drtail
