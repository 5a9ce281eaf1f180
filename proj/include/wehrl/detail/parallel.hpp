#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace wehrl::detail {

// Evaluates task(i) for i in [0, count) on up to `degree` threads. Each result
// lands in its own slot, so the output does not depend on scheduling.
template <typename Result, typename Task>
std::vector<Result> parallel_map(int count, int degree, const Task& task) {
  std::vector<Result> results(static_cast<std::size_t>(std::max(count, 0)));
  const int workers = std::clamp(degree, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) {
      results[i] = task(i);
    }
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            results[i] = task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return results;
}

// Pairwise (cascade) summation in a fixed order.
inline double pairwise_sum(std::span<const double> values) {
  if (values.empty()) {
    return 0.0;
  }
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace wehrl::detail
