#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hirota {

/// Chunked parallel loop over [0, n). Each index is visited exactly once;
/// results must be written to preassigned slots so the outcome is
/// independent of the thread count. First exception wins and is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& body, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr eptr = nullptr;
    std::mutex emu;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned tix = 0; tix < threads; ++tix) {
        const std::size_t lo = tix * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(emu);
                if (!eptr) eptr = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (eptr) std::rethrow_exception(eptr);
}

} // namespace hirota
