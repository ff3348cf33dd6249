#pragma once

#include <cstdint>

namespace sdom {

/// Counter-based random stream. Output k of a stream is a pure function of
/// (seed, stream id, k), so identical seeds replay bit-exactly on every
/// platform. Conversions to floating point are done here rather than through
/// <random> distributions, whose algorithms are implementation-defined.
///
/// A stream is single-owner; give each worker its own stream via fork().
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform_open() noexcept;
  /// Exponential(1) by inversion.
  double exponential() noexcept;

  /// Child stream that does not overlap this one or any sibling with a
  /// different id. Does not advance this stream.
  RngStream fork(std::uint64_t child_id) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer; exposed for hashing seeds and configs.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace sdom
