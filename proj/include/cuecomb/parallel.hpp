#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cuecomb {

/// Calls fn(i) for every i in [0, count) on up to `jobs` threads.
///
/// fn must only write state owned by index i. Every index runs even if some
/// throw; afterwards the exception of the lowest failing index is rethrown
/// through on_error(index, exception_ptr), so failures do not depend on the
/// schedule.
template <typename Fn, typename OnError>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn, OnError&& on_error) {
  std::size_t first_failed = count;
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto run_one = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (i < first_failed) {
        first_failed = i;
        first_error = std::current_exception();
      }
    }
  };

  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    const std::size_t workers = jobs < count ? jobs : count;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) run_one(i);
      });
    }
  }
  if (first_error) on_error(first_failed, first_error);
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  parallel_for(count, jobs, std::forward<Fn>(fn),
               [](std::size_t, std::exception_ptr e) { std::rethrow_exception(e); });
}

}  // namespace cuecomb
