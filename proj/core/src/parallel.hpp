// Internal: index-based work sharing over a fixed thread count. Results must
// be written to per-index slots by the callable so the merge order stays
// deterministic regardless of scheduling.
#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lyacert::detail {

inline int effective_jobs(int jobs, std::int64_t n) {
  if (jobs <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    jobs = hw > 0 ? static_cast<int>(hw) : 1;
  }
  if (static_cast<std::int64_t>(jobs) > n) jobs = static_cast<int>(n);
  return jobs < 1 ? 1 : jobs;
}

template <typename Fn>
void parallel_for_index(std::int64_t n, int jobs, Fn&& fn) {
  jobs = effective_jobs(jobs, n);
  if (jobs <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lyacert::detail
