#include "ergolab/torus.hpp"

#include <stdexcept>

#include "ergolab/rng.hpp"

namespace ergolab {

Fixed to_fixed(double x) noexcept {
  double r = x - std::floor(x);
  if (!(r < 1.0) || r < 0.0) r = 0.0;
  return static_cast<Fixed>(std::ldexp(r, 64));
}

unsigned DigitTail::take() noexcept {
  if (!random) return 0;
  const std::uint64_t word = splitmix64(key + (position >> 6) * 0x9E3779B97F4A7C15ULL);
  const unsigned bit = static_cast<unsigned>((word >> (63 - (position & 63))) & 1U);
  ++position;
  return bit;
}

Point::Point(const std::vector<double>& coords) : words_(coords.size()), tails_(coords.size()) {
  for (std::size_t i = 0; i < coords.size(); ++i) words_[i] = to_fixed(coords[i]);
}

Point::Point(std::vector<Fixed> words, std::vector<DigitTail> tails)
    : words_(std::move(words)), tails_(std::move(tails)) {
  if (tails_.empty()) tails_.resize(words_.size());
  if (tails_.size() != words_.size()) throw std::invalid_argument("Point: one digit tail per coordinate");
}

std::vector<double> Point::coords() const {
  std::vector<double> out(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) out[i] = to_double(words_[i]);
  return out;
}

}  // namespace ergolab
