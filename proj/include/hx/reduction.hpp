#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace hx {

// Summation block size. Fixed so that results do not depend on the worker
// count: every sum is formed as sequential per-block partial sums followed
// by a pairwise tree over the block sums, regardless of how blocks were
// distributed across threads.
inline constexpr std::size_t kReduceBlock = 1024;

namespace detail {

template <typename T>
T pairwise_merge(std::vector<T>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_merge(parts, lo, mid) + pairwise_merge(parts, mid, hi);
}

}  // namespace detail

// Runs fn(i) for i in [0, n) on `workers` threads in fixed contiguous chunks.
// Each index is visited exactly once; fn must not depend on visit order.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    if (n == 0) return;
    if (workers <= 1 || n < 2 * kReduceBlock) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nw = static_cast<std::size_t>(workers);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    const std::size_t chunk = (n + nw - 1) / nw;
    for (std::size_t w = 0; w < nw; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// Deterministic sum of term(i) over i in [0, n).  T needs operator+ and a
// zero-initializing default constructor.  The block structure (and hence
// the floating-point result) is identical for every worker count.
template <typename T, typename Term>
T block_sum(std::size_t n, const Term& term, int workers = 1) {
    if (n == 0) return T{};
    const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    std::vector<T> parts(nblocks);
    parallel_for(nblocks, workers, [&](std::size_t b) {
        const std::size_t lo = b * kReduceBlock;
        const std::size_t hi = std::min(n, lo + kReduceBlock);
        T acc{};
        for (std::size_t i = lo; i < hi; ++i) acc = acc + term(i);
        parts[b] = acc;
    });
    return detail::pairwise_merge(parts, 0, nblocks);
}

}  // namespace hx
