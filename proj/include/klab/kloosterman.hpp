#pragma once

#include <cstdint>
#include <optional>

#include "klab/modular.hpp"

namespace klab {

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

// Fourth-root-of-unity factor of the explicit formula: 1 when q = 1 mod 4,
// i when q = 3 mod 4 (q odd).
enum class ThetaQ { one, imaginary };

inline ThetaQ theta_q(std::uint64_t q) {
    return (q % 4 == 1) ? ThetaQ::one : ThetaQ::imaginary;
}

// K(m, n; q) = q^(-1/2) * sum over units b mod q of e((m b + n b^-1)/q),
// summed term by term. Imaginary parts cancel in pairs and are not
// accumulated. O(q) work; throws ModulusTooLarge above `cap`.
double kloosterman_bruteforce(std::int64_t m, std::int64_t n, std::uint64_t q,
                              std::uint64_t cap = kDefaultBruteForceCap);

// 2 (r/p)^k Re(theta_q e(2r/q)) for a given root r; the closed-form value of
// K(n, a; p^k) once r^2 = n a mod q. Invariant under r -> q - r.
double explicit_formula_value(std::uint64_t r, const PrimePower& pp);

// Closed-form K(n, a; p^k) for k >= 2, gcd(a, p) = 1. Returns exactly 0.0
// when p | n or when n a is a non-residue mod p; otherwise lifts a square
// root of n a mod q and applies the formula.
double kloosterman_explicit(std::int64_t n, std::int64_t a, const PrimePower& pp);

// Detects q = p^k with p an odd prime and k >= 2 (integer k-th roots plus a
// primality check on the base).
std::optional<PrimePower> detect_odd_prime_power(std::uint64_t q);

// Dispatch: explicit formula whenever q is an odd prime power with k >= 2 and
// one of the arguments is a unit (using K(m,n;q) = K(n,m;q) to put the unit
// in the a-slot); brute force under `brute_cap` otherwise.
double kloosterman(std::int64_t m, std::int64_t n, std::uint64_t q,
                   std::uint64_t brute_cap = kDefaultBruteForceCap);

}  // namespace klab
