#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "pdlab/rng.hpp"

namespace pdlab {

inline unsigned default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Run fn(replicate_index, rng) for replicate 0..count-1, where replicate r
// always uses stream base_stream + r of the given seed. Work is pulled
// from a shared counter but results land in a vector slot owned by the
// replicate, so the output is identical for any thread count.
template <class T>
std::vector<T> run_replicates(std::int64_t count, std::uint64_t seed,
                              std::uint64_t base_stream, unsigned threads,
                              const std::function<T(std::int64_t, PhiloxRng&)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(count));
  if (threads == 0) threads = default_thread_count();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count) + 1);
  std::atomic<std::int64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::int64_t r = next.fetch_add(1);
      if (r >= count) return;
      PhiloxRng rng(seed, base_stream + static_cast<std::uint64_t>(r));
      out[static_cast<std::size_t>(r)] = fn(r, rng);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace pdlab
