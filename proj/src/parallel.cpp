#include "jetmorse/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace jetmorse {

unsigned default_workers() {
  if (const char* env = std::getenv("JETMORSE_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return unsigned(v);
    } catch (const std::exception&) {
      // fall through to hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t n_threads = std::min<std::size_t>(workers, count);
  const std::size_t chunk = std::max<std::size_t>(1, count / (8 * n_threads));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) return;
      std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace jetmorse
