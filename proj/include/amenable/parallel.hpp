#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace amenable {

namespace detail {
inline std::atomic<unsigned>& thread_setting()
{
  static std::atomic<unsigned> threads{1};
  return threads;
}
} // namespace detail

/// Worker count for window scans. Results never depend on it.
inline unsigned scan_threads() { return detail::thread_setting().load(std::memory_order_relaxed); }
inline void set_scan_threads(unsigned n) { detail::thread_setting().store(std::max(1u, n)); }

/// Calls body(begin, end, chunk) over a contiguous partition of [0, n) and
/// returns the per-chunk results in chunk order.
template <class Result, class Body>
std::vector<Result> partitioned(std::size_t n, Body body)
{
  unsigned threads = scan_threads();
  std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(1, n / 4096));
  if (chunks <= 1) {
    std::vector<Result> one;
    one.push_back(body(std::size_t{0}, n));
    return one;
  }
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t lo = n * c / chunks;
    std::size_t hi = n * (c + 1) / chunks;
    pool.emplace_back([&, c, lo, hi] {
      try {
        results[c] = body(lo, hi);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return results;
}

} // namespace amenable
