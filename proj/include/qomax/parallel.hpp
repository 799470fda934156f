#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qomax {

// Worker count: min(jobs, hardware threads), capped by EB_THREADS when set.
inline unsigned worker_count(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("EB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    if (jobs < n) n = static_cast<unsigned>(jobs);
    return n == 0 ? 1 : n;
}

// Runs f(i) once for each i in [0, n). f must be safe to call concurrently
// for distinct i; results keyed by i stay deterministic under any schedule.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    if (n == 0) return;
    const unsigned workers = worker_count(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                f(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qomax
