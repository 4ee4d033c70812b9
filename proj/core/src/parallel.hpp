#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace rdc::detail {

// Static block partition over [0, count). Bodies must write only to their
// own output slots; under that contract the result is identical for any
// thread count.
template <typename Body>
void parallel_for(std::int64_t count, int threads, const Body& body) {
  threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(count, 1)));
  if (threads <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::int64_t chunk = (count + threads - 1) / threads;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const std::int64_t begin = t * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&body, begin, end] {
      for (std::int64_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace rdc::detail
