#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rdlab {

// Worker count from RDLAB_THREADS, else the hardware concurrency.
unsigned default_thread_count();

// Calls body(i) for every i in [0, count) across `threads` workers. Work is
// handed out in fixed blocks; callers write results by index, so the output
// never depends on the worker count. The first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (count == 0) return;
  threads = std::max(1u, threads);
  if (threads == 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  constexpr std::size_t kBlock = 16;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::mutex lock;
  std::size_t next_block = 0;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t block;
      {
        std::lock_guard<std::mutex> guard(lock);
        if (next_block >= blocks || failure) return;
        block = next_block++;
      }
      const std::size_t end = std::min(count, (block + 1) * kBlock);
      try {
        for (std::size_t i = block * kBlock; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(lock);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned spawned = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  std::vector<std::thread> pool;
  pool.reserve(spawned);
  for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rdlab
