#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace abundancy {

struct ScanOptions {
    unsigned threads = 1;
    /// Called after each finished chunk with (items done, items total). May run
    /// on worker threads.
    std::function<void(std::uint64_t, std::uint64_t)> on_progress;
};

inline unsigned default_thread_count()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `fn(chunk_first, chunk_last)` over [first, last) in fixed-size chunks
/// and returns the per-chunk results in range order. Chunk boundaries do not
/// depend on the thread count, so the merged output is deterministic.
template <class Result, class Fn>
std::vector<Result> scan_chunks(std::uint64_t first, std::uint64_t last, const ScanOptions& opts, Fn&& fn,
                                std::uint64_t chunk_size = 4096)
{
    if (last <= first) return {};
    const std::uint64_t total = last - first;
    const std::size_t chunks = static_cast<std::size_t>((total + chunk_size - 1) / chunk_size);
    std::vector<Result> results(chunks);
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> done{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::uint64_t lo = first + c * chunk_size;
            const std::uint64_t hi = std::min(last, lo + chunk_size);
            try {
                results[c] = fn(lo, hi);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
            const std::uint64_t d = done.fetch_add(hi - lo) + (hi - lo);
            if (opts.on_progress) opts.on_progress(d, total);
        }
    };

    const unsigned n_threads = std::clamp<unsigned>(opts.threads, 1, static_cast<unsigned>(std::min<std::size_t>(chunks, 256)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

} // namespace abundancy
