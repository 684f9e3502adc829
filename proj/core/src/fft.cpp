#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace ergolab::detail {

namespace {
// The FFTW planner is not thread-safe; execution with the new-array API is.
std::mutex planner_mutex;
}  // namespace

void backward_dft(std::span<Complex> data) {
  if (data.size() <= 1) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace ergolab::detail
