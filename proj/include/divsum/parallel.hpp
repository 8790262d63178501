// Copyright 2026 The divsum Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIVSUM_PARALLEL_HPP
#define DIVSUM_PARALLEL_HPP

// Deterministic work splitting: items are computed into an index-addressed
// buffer and combined by the caller in index order, so the result is
// independent of the thread count and of scheduling.

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace divsum {

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

// results[i] = fn(i) for i in [0, count), using up to `threads` workers.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, int threads, Fn&& fn) {
    std::vector<T> results(count);
    int nt = resolve_threads(threads);
    if (nt <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            results[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    std::size_t n = std::min<std::size_t>(std::size_t(nt), count);
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace divsum

#endif  // DIVSUM_PARALLEL_HPP
