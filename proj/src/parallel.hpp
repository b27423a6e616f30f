#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace stablefast {

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

// Runs fn(i) for i in [0, n). Work items only write their own slot of
// caller-owned storage, so results are independent of the worker count; any
// reduction happens afterwards in index order. If several items throw, the
// exception of the smallest index is rethrown to keep failures deterministic.
template <class Fn>
void parallel_for(long n, int workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (n <= 0) return;
    if (workers <= 1 || n == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::pair<long, std::exception_ptr>> errors;
    std::mutex err_mutex;
    auto body = [&] {
        for (;;) {
            const long i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                errors.emplace_back(i, std::current_exception());
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (!errors.empty()) {
        auto it = std::min_element(
            errors.begin(), errors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        std::rethrow_exception(it->second);
    }
}

}  // namespace stablefast
