#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace isowave {

// ISOWAVE_THREADS caps internal parallelism; 0 or unset means auto.
inline unsigned thread_budget() {
    static const unsigned budget = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        if (const char* env = std::getenv("ISOWAVE_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) return static_cast<unsigned>(v);
        }
        return hw;
    }();
    return budget;
}

// Splits [0, n) into contiguous chunks, one per worker. Each index is handled
// by exactly one thread and written independently, so the result is identical
// to the serial loop regardless of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = thread_budget();
    if (workers <= 1 || n < 4096) {
        fn(std::size_t{0}, n);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        std::size_t begin = static_cast<std::size_t>(t) * chunk;
        std::size_t end = begin + chunk < n ? begin + chunk : n;
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace isowave
