#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace betatest {

/// Worker-pool size: explicit request > BETATEST_THREADS env cap > hardware.
inline int resolve_thread_count(int requested = 0) {
    if (requested > 0) return requested;
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("BETATEST_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0 && cap < n) n = static_cast<int>(cap);
    }
    return n;
}

/// Runs body(i) for i in [0, n) on a pool of worker threads.
/// Exceptions must be handled inside body; work items are claimed through an
/// atomic counter, so the assignment of items to threads is unspecified but
/// every item runs exactly once.
template <class Body>
void parallel_for(int n, Body&& body, int threads = 0) {
    threads = resolve_thread_count(threads);
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    };
    std::vector<std::thread> pool;
    int spawn = std::min(threads, n);
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace betatest
