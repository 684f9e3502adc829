#include "ergolab/parallel.hpp"

#include <atomic>

namespace ergolab {

namespace {
std::atomic<std::size_t> thread_cap{0};
}  // namespace

void set_max_threads(std::size_t n) noexcept { thread_cap.store(n); }

std::size_t max_threads() noexcept {
  const std::size_t cap = thread_cap.load();
  if (cap != 0) return cap;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace ergolab
