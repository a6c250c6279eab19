#pragma once

// Fork-join helper for parameter sweeps. Work items write to their own
// output slot; callers reduce the slots in index order, so results are
// bit-reproducible regardless of the thread count.

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace vortexsr {

inline unsigned thread_count() {
    if (const char* env = std::getenv("VORTEX_SR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return (unsigned)std::min<long>(v, 256);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// f(i) is called once for each i in [0, n), partitioned in contiguous blocks.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const unsigned nt = std::min<std::size_t>(thread_count(), n ? n : 1);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&f, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace vortexsr
