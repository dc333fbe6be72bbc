#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace multlab::detail {

// Worker count: hardware concurrency, capped by MULTLAB_THREADS when set.
inline std::size_t worker_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MULTLAB_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) hw = std::min(hw, static_cast<std::size_t>(cap));
    } catch (...) {
    }
  }
  return hw;
}

// out[i] = fn(i) for i in [0, count); results land by index so order never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace multlab::detail
