#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace keplerwave::detail {

/// Worker cap: KEPLERWAVE_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("KEPLERWAVE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

/// Run body(i) for i in [0, n) on up to worker_count() threads.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const unsigned nw = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        const std::size_t lo = n * w / nw, hi = n * (w + 1) / nw;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Deterministic parallel reduction: fixed-size chunks evaluated in
/// parallel, partials combined in chunk order so the result does not
/// depend on the thread count.
template <typename T, typename ChunkFn>
T parallel_sum_chunks(std::size_t n, std::size_t chunk, ChunkFn&& fn) {
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(nchunks);
    parallel_for(nchunks, [&](std::size_t c) {
        partial[c] = fn(c * chunk, std::min(n, (c + 1) * chunk));
    });
    T total{};
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace keplerwave::detail
