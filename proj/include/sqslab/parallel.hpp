#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace sqslab {

// Chunked work sharing over [0, count).  Each worker owns a contiguous
// index range and writes only its own slots, so results are bit-identical
// to a sequential sweep regardless of the thread count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }

  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([begin, end, &body] {
      for (std::size_t k = begin; k < end; ++k) body(k);
    });
  }
  for (auto& worker : workers) worker.join();
}

}  // namespace sqslab
