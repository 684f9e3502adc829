#pragma once

#include <span>

#include "ergolab/observable.hpp"

namespace ergolab::detail {

/// In place: data[j] <- sum_r data[r] exp(+2 pi i r j / M), M = data.size().
void backward_dft(std::span<Complex> data);

}  // namespace ergolab::detail
