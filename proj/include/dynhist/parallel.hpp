#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dynhist {

// Upper bound on worker threads a module may use. 0 means "one per core".
struct Parallelism {
  unsigned jobs = 1;

  unsigned resolved() const {
    if (jobs != 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

// Runs fn(i) for i in [0, n) on at most `budget` threads. Work items are
// handed out dynamically; if any item throws, the exception of the lowest
// failing index is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, Parallelism budget, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(budget.resolved(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dynhist
