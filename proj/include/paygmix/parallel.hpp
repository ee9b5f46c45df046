#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace paygmix {

inline unsigned resolve_thread_count(unsigned requested, std::size_t work_items) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (work_items < n) {
        n = static_cast<unsigned>(std::max<std::size_t>(1, work_items));
    }
    return n;
}

/// Runs body(begin, end) over contiguous slices of [0, count). Slice
/// boundaries depend only on count and the thread count; callers that write
/// results by item index get output independent of scheduling.
template <typename Body>
void parallel_for_slices(std::size_t count, unsigned threads, Body&& body) {
    const unsigned n = resolve_thread_count(threads, count);
    if (n <= 1) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(n);
    workers.reserve(n);
    const std::size_t chunk = (count + n - 1) / n;
    for (unsigned w = 0; w < n; ++w) {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        workers.emplace_back([&, w, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace paygmix
