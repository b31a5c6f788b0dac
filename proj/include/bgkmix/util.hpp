#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bgkmix {

// Worker count for embarrassingly parallel per-mode loops; BGKMIX_THREADS
// overrides, default is sequential.
inline int env_thread_count() {
    const char* s = std::getenv("BGKMIX_THREADS");
    if (!s) return 1;
    const int n = std::atoi(s);
    return n > 0 ? n : 1;
}

// Runs fn(i) for i in [0, count). Results must be written to per-index slots
// so the outcome does not depend on scheduling. The first worker exception
// is rethrown on the calling thread after all workers stop.
inline void parallel_for(int count, const std::function<void(int)>& fn, int threads = 0) {
    if (threads <= 0) threads = env_thread_count();
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    std::atomic<bool> bail{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int t = 0; t < std::min(threads, count); ++t)
        pool.emplace_back([&] {
            int i;
            while (!bail && (i = next.fetch_add(1)) < count) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    bail = true;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace bgkmix
