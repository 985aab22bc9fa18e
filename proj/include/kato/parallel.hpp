#pragma once

#include <cstddef>
#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace kato {

/// Worker cap from KATO_LAB_THREADS, else the hardware thread count.
std::size_t worker_count();

/// Runs fn(i, worker) for i in [0, count). Work is striped over workers, so
/// each index is handled by exactly one worker; callers write results into
/// per-index slots and reduce afterwards in index order, which keeps the
/// outcome independent of the thread count.
template <typename F>
void parallel_for(std::size_t count, F&& fn, std::size_t workers = worker_count()) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace kato
