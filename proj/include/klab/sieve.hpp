#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "klab/errors.hpp"

namespace klab {

inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000;

// Sieve-backed tables over [1, X]: smallest prime factor, von Mangoldt Lambda
// (stored as log of the prime base), and Moebius mu. Built once, immutable;
// concurrent readers are safe.
class SieveTables {
  public:
    explicit SieveTables(std::uint64_t limit, std::uint64_t cap = kDefaultSieveCap);

    std::uint64_t limit() const { return limit_; }

    // n in [2, limit]
    std::uint32_t smallest_prime_factor(std::uint64_t n) const { return spf_[n]; }

    // log(l) when n = l^j for a prime l, 0 otherwise (and 0 for n <= 1)
    double lambda(std::uint64_t n) const { return n <= 1 ? 0.0 : lambda_[n]; }

    int mu(std::uint64_t n) const { return mu_[n]; }

    // Primes <= X in increasing order; X must not exceed the sieve limit.
    std::span<const std::uint32_t> primes_up_to(std::uint64_t X) const;

    // sum over divisors d of v with d <= V of mu(d), by enumerating the
    // squarefree divisors from the factorization of v.
    std::int64_t mu_partial_divisor_sum(std::uint64_t v, std::uint64_t V) const;

  private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<double> lambda_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint32_t> primes_;
};

inline SieveTables build_tables(std::uint64_t X, std::uint64_t cap = kDefaultSieveCap) {
    return SieveTables(X, cap);
}

}  // namespace klab
