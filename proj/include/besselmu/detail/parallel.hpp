#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace besselmu::detail {

/// BESSELMU_THREADS if set and positive, else the hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("BESSELMU_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for i in [0, n). Indices are handed out dynamically, so
/// body must only write to slot i of preallocated output. The first
/// exception thrown is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, unsigned workers = worker_count())
{
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace besselmu::detail
