#include "tff/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace tff {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t T = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  std::vector<std::exception_ptr> errors(T);
  std::vector<std::size_t> failed_at(T, n);
  // worker w takes indices w, w + T, w + 2T, ... so costly clusters spread out
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += T) {
      try {
        fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        failed_at[w] = i;
        return;
      }
    }
  };
  if (T == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (std::size_t w = 0; w < T; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::size_t first = n, who = 0;
  for (std::size_t w = 0; w < T; ++w)
    if (failed_at[w] < first) first = failed_at[w], who = w;
  if (first < n) std::rethrow_exception(errors[who]);
}

}  // namespace tff
