#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace icetes {

// Runs fn(i) for i in [0, n) across worker threads. Callers write results
// into slot i of a preallocated vector, so reduction order is independent of
// completion order and runs stay deterministic.
namespace detail {
inline thread_local bool inside_parallel_region = false;
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned threads = 0) {
    if (n == 0) return;
    unsigned hw = threads ? threads : std::thread::hardware_concurrency();
    // nested regions run serially: the outer loop already owns the cores
    if (hw <= 1 || n == 1 || detail::inside_parallel_region) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (hw > n) hw = unsigned(n);

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(hw);
    for (unsigned t = 0; t < hw; ++t) {
        pool.emplace_back([&, t]() {
            detail::inside_parallel_region = true;
            try {
                for (std::size_t i = t; i < n; i += hw) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace icetes
