#pragma once

#include <algorithm>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

namespace fsrigid {

/// Environment variable that forces every internal loop onto the calling thread.
inline constexpr const char* kSingleThreadEnv = "FSRIGID_SINGLE_THREAD";

inline bool single_threaded() {
  const char* v = std::getenv(kSingleThreadEnv);
  return v != nullptr && std::string(v) != "0" && std::string(v) != "";
}

/// results[i] = f(i) for i in [0, count), in index order regardless of scheduling.
template <class F>
auto parallel_map(int count, F f) -> std::vector<decltype(f(0))> {
  using R = decltype(f(0));
  std::vector<R> out(count);
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = single_threaded() || hw <= 1 ? 1 : static_cast<int>(std::min<unsigned>(hw, count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<void>> jobs;
  for (int w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int i = w; i < count; i += workers) out[i] = f(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace fsrigid
