#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace curvegap {

/// Splits [0, n) into `threads` contiguous chunks, runs fn(begin, end) on each
/// and returns the per-chunk results in chunk order. Merging in that order
/// keeps results independent of the thread count.
template <class Fn>
auto map_chunks(std::uint64_t n, unsigned threads, Fn&& fn) {
    using R = decltype(fn(std::uint64_t{}, std::uint64_t{}));
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2 * threads) return std::vector<R>{fn(std::uint64_t{0}, n)};

    std::vector<R> results(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned c = 0; c < threads; ++c) {
        std::uint64_t begin = n * c / threads;
        std::uint64_t end = n * (c + 1) / threads;
        workers.emplace_back([&, c, begin, end] {
            try {
                results[c] = fn(begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

} // namespace curvegap
