#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace lshsel::detail {

/// Runs body(i) for i in [0, count) on the available hardware threads.
/// Work is split into contiguous blocks; each index is visited exactly once.
/// Bodies must write only to their own output slots.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1U, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      threads.emplace_back([&, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Pairwise (cascade) summation.
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and its standard error (Bessel-corrected deviation / sqrt(n)).
inline MeanAndError mean_and_error(std::span<const double> values) {
  MeanAndError r;
  if (values.empty()) return r;
  const double n = static_cast<double>(values.size());
  r.mean = pairwise_sum(values) / n;
  if (values.size() < 2) return r;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dv = values[i] - r.mean;
    sq[i] = dv * dv;
  }
  r.std_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  return r;
}

}  // namespace lshsel::detail
