#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "noonsim/correlation.hpp"
#include "noonsim/experiments.hpp"

namespace noonsim::detail {

/// Runs fn(i) for i in [0, n) on a small thread pool. Each index is handled exactly once, so
/// results written by index are deterministic. The first exception is rethrown after join.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Records the capture fraction and enforces the warn/error thresholds.
void check_capture(double fraction, const std::string& label, SweepMetadata& meta);

/// Applies the sweep-scaled zero-over-zero rule to raw points and fills raw/normalized columns.
void finalize_series(SweepSeries& series, double eps_reg, const std::string& variable,
                     const std::vector<double>& x);

std::vector<double> normalized_to_peak(const std::vector<double>& v);

}  // namespace noonsim::detail
