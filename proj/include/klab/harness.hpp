#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "klab/kloosterman.hpp"
#include "klab/modular.hpp"
#include "klab/sieve.hpp"
#include "klab/weights.hpp"

namespace klab {

inline constexpr std::uint64_t kDefaultWorkCap = 1'000'000'000;

enum class EvalPath { explicit_formula, brute_force };

struct HarnessOptions {
    unsigned workers = 1;
    EvalPath path = EvalPath::explicit_formula;
    std::uint64_t work_cap = kDefaultWorkCap;          // term-evaluation budget
    std::uint64_t brute_force_cap = kDefaultBruteForceCap;
};

// One computed sum. n_terms counts the summands actually visited;
// trivial_bound = 2 * (count of terms whose argument is coprime to p), since
// |K| <= 2 on the explicit path and the remaining terms vanish identically.
struct SumReport {
    double value = 0.0;
    std::uint64_t n_terms = 0;
    double trivial_bound = 0.0;
    double delta = 0.0;        // measured cancellation exponent
    bool delta_floored = false;
    double wall_ms = 0.0;
    std::string params;
};

// The four component sums of the Vaughan decomposition. sigma1..sigma3 carry
// absolute values by definition; sigma4 is signed and also reported as |.|.
struct VaughanSplit {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double sigma3 = 0.0;
    double sigma4 = 0.0;      // signed
    double sigma4_abs = 0.0;
    std::uint64_t U = 0, V = 0, X = 0;
};

// Coefficient arrays of the exact four-term Vaughan identity:
// a1(n) + a2(n) + a3(n) + a4(n) = Lambda(n) for every n, any U, V >= 1.
struct VaughanCoeffs {
    std::vector<double> a1, a2, a3, a4;  // indexed 0..X, entry 0 unused
};

// log(trivial_bound / max(|value|, 1e-12)) / log q.
double cancellation_exponent(double value, double trivial_bound, std::uint64_t q);

// sum over n = 1..N of K(n, a; q).
SumReport consecutive_sum(std::uint64_t N, std::int64_t a, const PrimePower& pp,
                          const HarnessOptions& opt = {});

// S_{a,q}(A, B; M, N) = sum_{m<=M} sum_{n<=N} alpha_m beta_n K(mn, a; q).
SumReport bilinear_sum(const WeightSeq& A, const WeightSeq& B, std::uint64_t M,
                       std::uint64_t N, std::int64_t a, const PrimePower& pp,
                       const HarnessOptions& opt = {});

// T_s(u, v): outer sum over n <= N with n = v mod p^s of the absolute value
// of the inner weighted sum over m <= M with m = u mod p^s, each inner term
// alpha_m (r/p)^k Re(theta_q e(2r/q)) with r = hensel_sqrt(a m n mod q).
double t_sum(unsigned s, std::uint64_t u, std::uint64_t v, const WeightSeq& A,
             std::uint64_t M, std::uint64_t N, std::int64_t a, const PrimePower& pp,
             const HarnessOptions& opt = {});

// Sum over the hyperbolic region {m >= U, n >= V, mn <= X}.
SumReport hyperbolic_sum(const WeightSeq& A, const WeightSeq& B, std::uint64_t U,
                         std::uint64_t V, std::uint64_t X, std::int64_t a,
                         const PrimePower& pp, const HarnessOptions& opt = {});

// sum over primes l <= X of K(l, a; q). The l = p term vanishes and is
// skipped, so n_terms = pi(X) - [p <= X].
SumReport prime_sum(std::uint64_t X, std::int64_t a, const PrimePower& pp,
                    const HarnessOptions& opt = {});

// sum over n <= X of Lambda(n) K(n, a; q); only prime powers are visited.
SumReport lambda_sum(std::uint64_t X, std::int64_t a, const PrimePower& pp,
                     const HarnessOptions& opt = {});

// Vaughan component sums Sigma1..Sigma4 with f(n) = K(n, a; q).
VaughanSplit vaughan_split(std::uint64_t X, std::uint64_t U, std::uint64_t V,
                           std::int64_t a, const PrimePower& pp,
                           const HarnessOptions& opt = {});

// Same with an arbitrary f; the hook the component oracles test through.
VaughanSplit vaughan_split_f(std::uint64_t X, std::uint64_t U, std::uint64_t V,
                             const std::function<double(std::uint64_t)>& f,
                             const SieveTables& tables);

VaughanCoeffs vaughan_coefficients(std::uint64_t X, std::uint64_t U, std::uint64_t V,
                                   const SieveTables& tables);

}  // namespace klab
