#pragma once

#include <cstdint>
#include <string>

#include "klab/errors.hpp"

namespace klab {

// Residues are plain integers in [0, modulus). All arithmetic stays exact for
// moduli below 2^63; products go through a 128-bit widening multiply.
using Residue = std::uint64_t;

inline constexpr std::uint64_t kModulusMax = (std::uint64_t{1} << 63) - 1;

inline std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t q) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * y) % q);
}

inline std::uint64_t add_mod(std::uint64_t x, std::uint64_t y, std::uint64_t q) {
    // x, y < q < 2^63, so the plain sum cannot wrap.
    std::uint64_t s = x + y;
    return s >= q ? s - q : s;
}

inline std::uint64_t sub_mod(std::uint64_t x, std::uint64_t y, std::uint64_t q) {
    return x >= y ? x - y : x + (q - y);
}

// Maps an arbitrary signed integer into [0, q).
inline std::uint64_t reduce(std::int64_t v, std::uint64_t q) {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
    if (q == 1) return 0;
    std::uint64_t acc = 1;
    base %= q;
    while (exp != 0) {
        if (exp & 1) acc = mul_mod(acc, base, q);
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    return acc;
}

// Extended-gcd inverse; throws NotInvertible when gcd(x, q) > 1.
std::uint64_t inv_mod(std::uint64_t x, std::uint64_t q);

// Euler's criterion. Returns 0 iff p | n, +1 on nonzero squares, -1 otherwise.
int legendre(std::int64_t n, std::uint64_t p);

// Tonelli-Shanks root mod an odd prime, canonicalized to min(r, p - r).
// Returns 0 when p | a; throws NotAResidue when legendre(a, p) = -1.
std::uint64_t sqrt_mod_p(std::uint64_t a, std::uint64_t p);

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(std::uint64_t n);

// The modulus q = p^k for an odd prime p. Validated at construction; q must
// fit below 2^63 so that every product fits the widening multiply.
struct PrimePower {
    std::uint64_t p;
    unsigned k;
    std::uint64_t q;

    PrimePower(std::uint64_t p_, unsigned k_);

    // p^e for 0 <= e <= k (no overflow possible: p^e <= q).
    std::uint64_t pow_p(unsigned e) const;
};

}  // namespace klab
