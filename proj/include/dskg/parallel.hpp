#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dskg::parallel {

// Worker count: DSKG_THREADS if set (clamped to >= 1), hardware concurrency
// otherwise.
inline int thread_count() {
    if (const char* env = std::getenv("DSKG_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Run body(i) for i in [0, n). Each index writes only its own slot, so the
// result is deterministic regardless of the scheduling; exceptions from the
// workers are rethrown on the calling thread.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < n; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace dskg::parallel
