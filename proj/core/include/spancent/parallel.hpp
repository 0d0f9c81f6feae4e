#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spancent {

/// Calls body(index, worker) for every index in [0, count), spread over
/// `threads` workers in fixed-size chunks. Results must not depend on which
/// worker ran an index; the first exception is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                                        std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i, std::size_t{0});
        return;
    }
    constexpr std::size_t chunk = 64;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const std::size_t begin = next.fetch_add(chunk);
                    if (begin >= count) break;
                    const std::size_t end = std::min(count, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i) body(i, w);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

/// Number of workers parallel_for will use; size per-worker scratch with this.
inline std::size_t worker_count(std::size_t count, int threads) {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                   std::max<std::size_t>(count, 1));
}

}  // namespace spancent
