#pragma once

// Counter-based random bits. Every draw is a pure function of
// (seed, stream, counter), so results never depend on call order or on how
// work is split across threads.

#include <cstdint>

namespace ergolab {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return splitmix64(splitmix64(seed_ ^ splitmix64(stream)) + counter * 0xD1B54A32D192ED03ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1p-53;
  }

  /// +1 or -1 with equal probability.
  constexpr double sign(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return (bits(stream, counter) >> 63) ? 1.0 : -1.0;
  }

  constexpr std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace ergolab
