#pragma once

// Pairwise (tree) summation in a fixed order. The split points depend only on
// the range length, so a sum is bit-identical however it is scheduled.

#include <cstddef>
#include <span>
#include <utility>

namespace ergolab {

inline constexpr std::size_t kPairwiseBlock = 32;

/// Sums term(i) for i in [first, last).
template <class F>
auto pairwise_reduce(std::size_t first, std::size_t last, const F& term) -> decltype(term(first)) {
  using T = decltype(term(first));
  if (last - first <= kPairwiseBlock) {
    T acc{};
    for (std::size_t i = first; i < last; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = first + (last - first) / 2;
  return pairwise_reduce(first, mid, term) + pairwise_reduce(mid, last, term);
}

template <class T>
T pairwise_sum(std::span<const T> values) {
  return pairwise_reduce(0, values.size(), [&](std::size_t i) { return values[i]; });
}

}  // namespace ergolab
