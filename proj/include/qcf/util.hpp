/**
 * @file util.hpp
 * @brief Thread count from QCF_THREADS and a small ordered parallel map.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qcf {

/// QCF_THREADS if set to a positive integer, otherwise the hardware concurrency (at least 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("QCF_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = f(i) for i in [0, n), evaluated on up to thread_count() threads; results keep index order.
/// The first exception thrown by any task is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f, unsigned threads = thread_count()) {
  std::vector<T> out(n);
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; !failed && (i = next++) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace qcf
