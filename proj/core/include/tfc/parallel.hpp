#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace tfc {

/// Static range split over n_threads (0 = hardware concurrency). Work items
/// must write to disjoint outputs; results are then independent of the
/// thread count.
inline void parallel_for(std::size_t n, std::size_t n_threads,
                         const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (n_threads == 0) n_threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, n);
    if (n_threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += n_threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace tfc
