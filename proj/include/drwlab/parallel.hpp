#pragma once

// Fork-join over independent weight blocks. Results land in index order, so
// the merge is deterministic regardless of thread count.

#include <cstdlib>
#include <algorithm>
#include <future>
#include <thread>
#include <vector>

namespace drwlab {

/// Worker count from DRWLAB_THREADS (0 = hardware concurrency); 1 when unset or invalid.
inline std::size_t thread_count() {
    const char* env = std::getenv("DRWLAB_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || n < 0) return 1;
    if (n == 0) return std::max(1u, std::thread::hardware_concurrency());
    return static_cast<std::size_t>(n);
}

template <class R, class F>
std::vector<R> parallel_map(std::size_t n, F fn) {
    std::vector<R> out(n);
    const std::size_t workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    for (std::size_t start = 0; start < n; start += workers) {
        std::vector<std::future<R>> batch;
        for (std::size_t i = start; i < std::min(n, start + workers); ++i)
            batch.push_back(std::async(std::launch::async, fn, i));
        for (std::size_t k = 0; k < batch.size(); ++k) out[start + k] = batch[k].get();
    }
    return out;
}

}  // namespace drwlab
