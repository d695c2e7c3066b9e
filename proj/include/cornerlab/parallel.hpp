#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace cornerlab {

// requested > 0 wins; otherwise CORNERLAB_THREADS, otherwise 1.
int resolve_threads(int requested);

// Sums f(begin, end) over fixed-size slices of [0, n). Slice boundaries do not
// depend on the thread count, so integer results are identical for any thread count.
template <class T, class F>
T parallel_sum(std::size_t n, int threads, F&& f) {
  constexpr std::size_t kSlices = 64;
  const std::size_t slice = std::max<std::size_t>(1, (n + kSlices - 1) / kSlices);
  const std::size_t count = (n + slice - 1) / slice;
  std::vector<T> partial(count, T{});
  auto run = [&](std::size_t first, std::size_t step) {
    for (std::size_t s = first; s < count; s += step) {
      partial[s] = f(s * slice, std::min(n, (s + 1) * slice));
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& t : pool) t.join();
  }
  T total{};
  for (const auto& v : partial) total += v;
  return total;
}

// Runs body(task) for task in [0, count) on `threads` workers pulling from a shared counter.
template <class F>
void parallel_tasks(std::size_t count, int threads, F&& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next.fetch_add(1); t < count; t = next.fetch_add(1)) body(t);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cornerlab
