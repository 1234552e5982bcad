#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ilock {

/// Runs fn(begin, end, chunk_index) over [0, n) split into `jobs` contiguous
/// chunks. Callers merge per-chunk results in chunk order, which keeps
/// multi-threaded runs byte-identical to jobs=1.
template <typename Fn>
void forEachChunk(size_t n, unsigned jobs, Fn&& fn) {
  if (n == 0) return;
  if (jobs <= 1 || n < 2 * jobs) {
    fn(size_t{0}, n, size_t{0});
    return;
  }
  size_t chunks = jobs;
  size_t per = (n + chunks - 1) / chunks;
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (size_t c = 0; c < chunks; ++c) {
    size_t begin = c * per;
    size_t end = begin + per < n ? begin + per : n;
    if (begin >= end) break;
    workers.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace ilock
