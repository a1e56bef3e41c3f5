#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace aalab {

inline std::atomic<int>& max_threads_slot() {
    static std::atomic<int> n{1};
    return n;
}

inline void set_max_threads(int n) {
    if (n < 1) n = 1;
    max_threads_slot().store(n);
}

inline int max_threads() { return max_threads_slot().load(); }

// Chunked parallel loop over [0, n). Chunks write to disjoint slots only, so
// results do not depend on scheduling.
inline void parallel_for(long n, const std::function<void(long, long)>& body) {
    const int threads = std::min<long>(max_threads(), n);
    if (threads <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long lo = t * chunk;
        const long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace aalab
