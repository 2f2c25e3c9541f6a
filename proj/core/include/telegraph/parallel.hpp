#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace telegraph {

// Deterministic chunked parallel map over items [0, n): items are split into
// fixed-size chunks, workers claim chunks dynamically, and each chunk's
// result lands at its chunk index. Callers fold the returned vector in order,
// which makes every aggregate independent of the worker count.
template <typename Result, typename Fn>
std::vector<Result> chunked_map(std::uint64_t n_items, std::uint64_t chunk_size,
                                unsigned threads, Fn&& per_chunk) {
  const std::uint64_t n_chunks =
      chunk_size == 0 ? 0 : (n_items + chunk_size - 1) / chunk_size;
  std::vector<Result> results(static_cast<std::size_t>(n_chunks));
  if (n_chunks == 0) return results;

  unsigned workers = threads == 0 ? 1 : threads;
  if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);

  auto run = [&](std::atomic<std::uint64_t>& next) {
    for (;;) {
      std::uint64_t chunk = next.fetch_add(1);
      if (chunk >= n_chunks) break;
      std::uint64_t begin = chunk * chunk_size;
      std::uint64_t end = std::min(begin + chunk_size, n_items);
      results[static_cast<std::size_t>(chunk)] = per_chunk(chunk, begin, end);
    }
  };

  if (workers <= 1) {
    std::atomic<std::uint64_t> next{0};
    run(next);
    return results;
  }

  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) {
    pool.emplace_back([&] { run(next); });
  }
  for (auto& th : pool) th.join();
  return results;
}

} // namespace telegraph
