#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace vhawkes {

// Worker count: hardware concurrency, capped by the VHL_THREADS env var.
inline std::size_t worker_count() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("VHL_THREADS")) {
        const long cap = std::atol(env);
        if (cap >= 1 && static_cast<std::size_t>(cap) < n)
            n = static_cast<std::size_t>(cap);
    }
    return n;
}

// f(i) for i in [0, n); results must not depend on scheduling, so callers
// derive any randomness from the index, not from shared state.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace vhawkes
