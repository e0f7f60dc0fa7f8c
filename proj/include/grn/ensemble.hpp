#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace grn {

/// Runs job(0..runs-1) on `workers` threads (0: hardware concurrency) and
/// returns the results by index, so the output never depends on scheduling.
/// The first exception thrown by a job is rethrown after all threads join.
template <class Job>
auto run_ensemble(std::size_t runs, unsigned workers, Job&& job) {
  using Result = decltype(job(std::size_t{0}));
  if (runs == 0) {
    throw std::invalid_argument("run count must be >= 1");
  }
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  std::vector<Result> results(runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= runs) {
        return;
      }
      try {
        results[k] = job(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next.store(runs);
        return;
      }
    }
  };

  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, runs));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return results;
}

/// Mean and standard error accumulated in index order.
class RunningMoments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double se() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace grn
