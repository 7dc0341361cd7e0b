#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hypertest {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// The Philox4x32 bijection with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// A random stream backed by Philox4x32-10.
///
/// The 64-bit seed is the Philox key; the upper half of the 128-bit counter
/// holds a 64-bit stream id and the lower half the block index. Streams with
/// different (seed, stream id) therefore never overlap, and draws do not
/// depend on how many other streams exist or in which order they run.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  /// Stream for replicate `rep` of experiment cell `cell` (each < 2^32).
  static RngStream for_replicate(std::uint64_t seed, std::uint32_t cell, std::uint32_t rep) noexcept {
    return RngStream(seed, (static_cast<std::uint64_t>(cell) << 32) | rep);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer on [0, bound) by rejection (unbiased).
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  unsigned used_ = 4;
};

/// SplitMix64 finalizer; used to turn user seeds and ids into well-mixed keys.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace hypertest
