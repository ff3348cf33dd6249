#include "sdom/rng.hpp"

#include <cmath>

namespace sdom {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), key_(mix64(seed ^ mix64(stream_id ^ 0x5DEECE66DULL))) {}

std::uint64_t RngStream::next_u64() noexcept {
  // SplitMix64 evaluated at position `counter_` of the keyed sequence.
  return mix64(key_ + kGolden * counter_++);
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * kTwoPow53Inv;
}

double RngStream::uniform_open() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * kTwoPow53Inv;
}

double RngStream::exponential() noexcept { return -std::log(uniform_open()); }

RngStream RngStream::fork(std::uint64_t child_id) const noexcept {
  RngStream child(seed_);
  child.key_ = mix64(key_ ^ mix64(child_id + 0x632BE59BD9B4E019ULL));
  return child;
}

}  // namespace sdom
