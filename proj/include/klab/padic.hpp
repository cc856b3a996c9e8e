#pragma once

#include <cstdint>
#include <vector>

#include "klab/modular.hpp"

namespace klab {

// Truncated p-adic square-root expansion of 1 + gamma * p^s * t: the sparse
// polynomial f(X) = sum_j g(j) gamma^j p^(js) X^j over j = 0..floor(k/s),
// with g(j) the binomial-half coefficients reduced mod p^k. By construction
// f(t)^2 = 1 + gamma * p^s * t (mod p^k) for every integer t.
struct ExpansionPlan {
    PrimePower pp;
    unsigned s;
    std::uint64_t gamma;                 // unit mod p, reduced mod q
    std::vector<std::uint64_t> g;        // g[0..floor(k/s)], g[0] = 1
    std::vector<std::uint64_t> f_coeffs; // f_coeffs[j] = g[j]*gamma^j*p^(js) mod q
};

// Unique square root of a mod p^k that reduces to the canonical root mod p.
// Quadratic Newton lifting from the Tonelli-Shanks base root.
// Throws NotUnit when p | a, NotAResidue when a is a non-square mod p.
std::uint64_t hensel_sqrt(std::uint64_t a, const PrimePower& pp);

// g(0..jmax) with g(j) = binom(1/2, j) mod p^k via the term-ratio recurrence.
// Throws FactorialNotInvertible when p | j for some j <= jmax; keep jmax < p.
std::vector<std::uint64_t> binomial_half_coeffs(const PrimePower& pp, unsigned jmax);

// Step parameter s = floor(eta * log N / (3000 log p)), clamped into [1, k].
unsigned choose_s(std::uint64_t N, const PrimePower& pp, double eta);
// Same formula with log N supplied directly (N itself can exceed any native
// integer in parameter studies).
unsigned choose_s_log(double log_N, const PrimePower& pp, double eta);

ExpansionPlan build_expansion(const PrimePower& pp, unsigned s, std::uint64_t gamma);

// Horner evaluation of f at t mod p^k.
std::uint64_t eval_poly(const ExpansionPlan& plan, std::uint64_t t);

}  // namespace klab
