#pragma once

// Minimal deterministic parallel map: tasks write to preassigned slots, so
// results are identical regardless of thread count. VAISMANLAB_THREADS caps
// the pool; unset means hardware concurrency.

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace vaisman {

inline int thread_budget() {
    if (const char* env = std::getenv("VAISMANLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <class Fn>
void parallel_for(int count, const Fn& fn) {
    int threads = std::min(thread_budget(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace vaisman
