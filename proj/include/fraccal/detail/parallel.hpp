#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

namespace fraccal::detail {

// Worker count: FRACCAL_THREADS wins, else hardware concurrency, else 1.
inline unsigned thread_count() {
    if (const char* env = std::getenv("FRACCAL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1u;
}

// Static partition of [0, n) into contiguous slices, one per worker.
// Each worker writes only to indices it owns, so the result of a loop is
// identical for any thread count: reductions happen afterwards, in index
// order, on the materialised per-index values.
template <class F>
void parallel_for(std::size_t n, F&& body) {
    if (n == 0) return;
    const unsigned requested = thread_count();
    const std::size_t workers =
        std::min<std::size_t>(requested, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (std::size_t i = 0; i < std::min(chunk, n); ++i) body(i);
    for (auto& t : pool) t.join();
}

}  // namespace fraccal::detail
