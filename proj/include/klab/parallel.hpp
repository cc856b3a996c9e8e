#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace klab {

// Compensated (Kahan) accumulator. Summation order is part of every result
// contract here, so the harness always adds terms in index order.
struct Kahan {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }

    double result() const { return s; }
};

struct Partial {
    Kahan acc;
    std::uint64_t visited = 0;  // summands evaluated
    std::uint64_t units = 0;    // summands with argument coprime to p
};

inline constexpr std::uint64_t kChunkSize = std::uint64_t{1} << 16;

// Splits [0, n_items) into fixed 2^16-wide chunks, runs `body(lo, hi, out)`
// on each, and combines the per-chunk partials strictly in chunk order. The
// result is therefore identical for every worker count.
template <typename Fn>
Partial chunked_reduce(std::uint64_t n_items, unsigned workers, Fn&& body) {
    const std::uint64_t n_chunks = (n_items + kChunkSize - 1) / kChunkSize;
    std::vector<Partial> parts(n_chunks);

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t lo = c * kChunkSize;
        const std::uint64_t hi = std::min(lo + kChunkSize, n_items);
        body(lo, hi, parts[c]);
    };

    if (workers <= 1 || n_chunks <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mu;
        auto worker = [&] {
            for (;;) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                try {
                    run_chunk(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        unsigned n_threads = workers;
        if (n_chunks < n_threads) n_threads = static_cast<unsigned>(n_chunks);
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    Partial total;
    for (const Partial& part : parts) {
        total.acc.add(part.acc.result());
        total.visited += part.visited;
        total.units += part.units;
    }
    return total;
}

}  // namespace klab
