#pragma once

// Tiny strided thread pool for embarrassingly parallel index loops. Results
// must be written to index-addressed storage so the outcome is independent of
// scheduling. EDGEKERNEL_THREADS caps the worker count.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace edgekernel {

inline int max_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    long cap = hw ? static_cast<long>(hw) : 1;
    if (const char* env = std::getenv("EDGEKERNEL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) cap = std::min(v, 256L);
    }
    return static_cast<int>(cap);
}

inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    const size_t nt = std::min<size_t>(static_cast<size_t>(max_threads()), n);
    if (nt <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::mutex mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (size_t t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            try {
                for (size_t i = t; i < n; i += nt) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace edgekernel
