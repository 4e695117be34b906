// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace semex {

// Runs fn(rep) for rep = 0..reps-1 across a small thread pool.  Reps
// are claimed through an atomic counter; any per-rep randomness must
// come from rng::stream keyed by the rep index, which is what makes
// the output independent of the worker count.
inline void parallel_for(std::int64_t reps, int threads,
                         const std::function<void(std::int64_t)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || reps < 2) {
        for (std::int64_t r = 0; r < reps; ++r) fn(r);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            while (true) {
                std::int64_t r = next.fetch_add(1);
                if (r >= reps) break;
                fn(r);
            }
        });
    for (auto& th : pool) th.join();
}

} // namespace semex
