#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace dunklsq {

/// Runs body(i) for i = 0..n-1 over at most `threads` workers.  Work items
/// must be independent; results written per index keep reductions ordered and
/// output deterministic regardless of the thread count.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dunklsq
