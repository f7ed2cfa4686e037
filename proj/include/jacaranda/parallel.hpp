#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace jacaranda {

/// Runs fn(task) for every task in [0, count) on up to `workers` threads.
/// fn(task, worker) is also accepted so callers can keep per-worker state.
/// The first exception thrown by any task is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    auto call = [&](std::size_t task, std::size_t worker) {
        if constexpr (std::is_invocable_v<Fn&, std::size_t, std::size_t>)
            fn(task, worker);
        else
            fn(task);
    };
    const auto threads = static_cast<std::size_t>(std::max(1, workers));
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) call(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::size_t n = std::min(threads, count);
    pool.reserve(n);
    for (std::size_t w = 0; w < n; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    call(i, w);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace jacaranda
