#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bcl {

// Splits [0, count) into fixed chunks and runs fn(chunk_index, begin, end) on
// a worker pool. Chunk boundaries depend only on count, so per-chunk results
// merged in chunk order are identical for any thread count.
inline void parallel_chunks(
    size_t count, int threads,
    const std::function<void(size_t, size_t, size_t)>& fn) {
  if (count == 0) return;
  size_t nchunks = 64;
  if (nchunks > count) nchunks = count;
  std::vector<std::pair<size_t, size_t>> ranges;
  size_t per = count / nchunks, extra = count % nchunks;
  size_t at = 0;
  for (size_t i = 0; i < nchunks; ++i) {
    size_t len = per + (i < extra ? 1 : 0);
    ranges.emplace_back(at, at + len);
    at += len;
  }
  if (threads <= 1) {
    for (size_t i = 0; i < ranges.size(); ++i)
      fn(i, ranges[i].first, ranges[i].second);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= ranges.size()) return;
        fn(i, ranges[i].first, ranges[i].second);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bcl
