#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace potlab {

/// Evaluates fn(i) for i in [0, n) on `workers` threads and returns the
/// results in index order. Output is independent of the worker count as
/// long as fn(i) depends only on i.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  static_assert(!std::is_same_v<Result, bool>, "vector<bool> cannot be written concurrently");
  std::vector<Result> out(n);
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace potlab
