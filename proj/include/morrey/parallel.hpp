#pragma once

// Minimal deterministic work sharing. Results are written into slots keyed
// by index, so the output never depends on the worker count or scheduling.

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace morrey {

// Worker count: explicit flag > env MORREY_EMBED_JOBS > hardware.
inline unsigned resolve_jobs(int flag_value = 0) {
    if (flag_value > 0) return unsigned(flag_value);
    if (const char* env = std::getenv("MORREY_EMBED_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0)
            throw std::invalid_argument("MORREY_EMBED_JOBS must be a positive integer");
        return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, Fn&& fn) {
    std::vector<T> out(n);
    if (n == 0) return out;
    if (jobs <= 1 || n == 1) {
        for (std::size_t k = 0; k < n; ++k) out[k] = fn(k);
        return out;
    }
    const unsigned workers = unsigned(std::min<std::size_t>(jobs, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < n; k += workers) out[k] = fn(k);
        });
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace morrey
