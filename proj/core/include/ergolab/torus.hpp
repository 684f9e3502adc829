#pragma once

// Torus coordinates in 64-bit fixed point.
//
// A coordinate x in [0,1) is stored as the integer u = floor(x * 2^64).
// Unsigned wrapping arithmetic is then exactly arithmetic mod 1, and the
// pairing <m, x> mod 1 for an integer frequency m is the wrapped product m*u.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ergolab {

using Fixed = std::uint64_t;

/// Reduces x mod 1 and converts to fixed point (truncating below 2^-64).
Fixed to_fixed(double x) noexcept;

/// Exact for the top 53 bits; never rounds up to 1.0.
inline double to_double(Fixed u) noexcept {
  return static_cast<double>(u >> 11) * 0x1p-53;
}

inline long double to_long_double(Fixed u) noexcept {
  return static_cast<long double>(u) * 0x1p-64L;
}

/// exp(2 pi i t) for t = u / 2^64.
inline std::complex<double> unit_phase(Fixed u) noexcept {
  // Centre the angle in [-pi, pi) before handing it to sin/cos.
  const double t = static_cast<double>(static_cast<std::int64_t>(u) >> 11) * 0x1p-53;
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

/// An infinite stream of binary digits sitting below the 64 stored bits of a
/// coordinate. The doubling map shifts one digit in per step; everything else
/// ignores the tail.
struct DigitTail {
  std::uint64_t key = 0;
  std::uint64_t position = 0;
  bool random = false;

  /// Digit at the current position (0 for an inactive tail); advances.
  unsigned take() noexcept;

  friend bool operator==(const DigitTail&, const DigitTail&) = default;
};

/// A point of the d-torus together with the digit tails of its coordinates.
class Point {
 public:
  Point() = default;
  /// Coordinates are reduced mod 1. Tails are all zero.
  explicit Point(const std::vector<double>& coords);
  Point(std::vector<Fixed> words, std::vector<DigitTail> tails);

  static Point origin(std::size_t dim) { return Point(std::vector<Fixed>(dim, 0), {}); }

  std::size_t dimension() const noexcept { return words_.size(); }
  double operator[](std::size_t i) const noexcept { return to_double(words_[i]); }
  Fixed fixed(std::size_t i) const noexcept { return words_[i]; }
  Fixed& fixed(std::size_t i) noexcept { return words_[i]; }
  DigitTail& tail(std::size_t i) noexcept { return tails_[i]; }
  const DigitTail& tail(std::size_t i) const noexcept { return tails_[i]; }
  const std::vector<Fixed>& words() const noexcept { return words_; }
  std::vector<double> coords() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Fixed> words_;
  std::vector<DigitTail> tails_;
};

}  // namespace ergolab
