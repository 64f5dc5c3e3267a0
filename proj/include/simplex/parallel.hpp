/*
 * Copyright 2026 The simplex-explain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SIMPLEX_PARALLEL_HPP_
#define SIMPLEX_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace simplex {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is handled
// by exactly one call, so callers that write only to slot i get results that
// do not depend on the thread count. The first exception is rethrown.
template <typename Fn>
void parallel_for(Eigen::Index n, int jobs, Fn&& fn) {
  if (n <= 0) return;
  const int workers =
      static_cast<int>(std::min<Eigen::Index>(std::max(jobs, 1), n));
  if (workers == 1) {
    for (Eigen::Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<Eigen::Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const Eigen::Index i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace simplex

#endif  // SIMPLEX_PARALLEL_HPP_
