#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace siftlab {

inline unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(chunk_index) for chunk_index in [0, num_chunks) on `workers` threads.
// Chunks are claimed from an atomic counter; callers must keep writes to
// shared state disjoint per chunk so results do not depend on scheduling.
template <class Fn>
void parallel_chunks(std::uint64_t num_chunks, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (num_chunks == 0) return;
    if (workers <= 1 || num_chunks == 1) {
        for (std::uint64_t i = 0; i < num_chunks; ++i) fn(i);
        return;
    }
    if (workers > num_chunks) workers = static_cast<unsigned>(num_chunks);

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= num_chunks || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace siftlab
