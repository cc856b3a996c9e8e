#include "klab/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace klab {

SieveTables::SieveTables(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
    if (limit < 1) throw BadArgument("SieveTables: limit must be >= 1");
    if (limit > cap) {
        throw LimitTooLarge("SieveTables: limit " + std::to_string(limit) +
                            " exceeds the sieve cap " + std::to_string(cap));
    }
    spf_.assign(limit + 1, 0);
    lambda_.assign(limit + 1, 0.0);
    mu_.assign(limit + 1, 0);
    mu_[1] = 1;

    // Linear sieve: each composite is struck once by its smallest prime factor.
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes_.push_back(static_cast<std::uint32_t>(i));
            mu_[i] = -1;
        }
        for (std::uint32_t pr : primes_) {
            if (pr > spf_[i] || i * pr > limit) break;
            spf_[i * pr] = pr;
            mu_[i * pr] = (pr == spf_[i]) ? std::int8_t{0}
                                          : static_cast<std::int8_t>(-mu_[i]);
        }
    }

    for (std::uint32_t pr : primes_) {
        double lg = std::log(static_cast<double>(pr));
        for (std::uint64_t pw = pr;; pw *= pr) {
            lambda_[pw] = lg;
            if (pw > limit / pr) break;
        }
    }
}

std::span<const std::uint32_t> SieveTables::primes_up_to(std::uint64_t X) const {
    if (X > limit_) {
        throw BadArgument("primes_up_to: X exceeds the sieve limit");
    }
    auto end = std::upper_bound(primes_.begin(), primes_.end(), X);
    return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

std::int64_t SieveTables::mu_partial_divisor_sum(std::uint64_t v, std::uint64_t V) const {
    if (v < 1 || v > limit_) {
        throw BadArgument("mu_partial_divisor_sum: v must lie in [1, limit]");
    }
    // Distinct prime factors of v (at most 9 below 10^8).
    std::uint32_t ps[16];
    unsigned np = 0;
    std::uint64_t rest = v;
    while (rest > 1) {
        std::uint32_t d = spf_[rest];
        ps[np++] = d;
        while (rest % d == 0) rest /= d;
    }
    std::int64_t total = 0;
    for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
        std::uint64_t d = 1;
        int bits = 0;
        for (unsigned i = 0; i < np; ++i) {
            if (mask & (1u << i)) {
                d *= ps[i];
                ++bits;
            }
        }
        if (d <= V) total += (bits % 2 == 0) ? 1 : -1;
    }
    return total;
}

}  // namespace klab
