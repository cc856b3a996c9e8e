#include "klab/padic.hpp"

#include <algorithm>
#include <cmath>

namespace klab {

std::uint64_t hensel_sqrt(std::uint64_t a, const PrimePower& pp) {
    a %= pp.q;
    if (a % pp.p == 0) {
        throw NotUnit("hensel_sqrt: p divides a");
    }
    if (legendre(static_cast<std::int64_t>(a % pp.p), pp.p) != 1) {
        throw NotAResidue("hensel_sqrt: a is not a square mod p");
    }
    std::uint64_t r = sqrt_mod_p(a % pp.p, pp.p);
    unsigned e = 1;
    while (e < pp.k) {
        unsigned e2 = std::min(2 * e, pp.k);
        std::uint64_t m = pp.pow_p(e2);
        // Newton step r <- r - (r^2 - a) / (2r), exact mod p^e2 since 2r is a unit.
        std::uint64_t diff = sub_mod(mul_mod(r, r, m), a % m, m);
        std::uint64_t inv2r = inv_mod(mul_mod(2, r, m), m);
        r = sub_mod(r, mul_mod(diff, inv2r, m), m);
        e = e2;
    }
    return r;
}

std::vector<std::uint64_t> binomial_half_coeffs(const PrimePower& pp, unsigned jmax) {
    const std::uint64_t q = pp.q;
    std::vector<std::uint64_t> g(jmax + 1);
    g[0] = 1;
    if (jmax == 0) return g;
    std::uint64_t half = inv_mod(2, q);
    for (unsigned j = 1; j <= jmax; ++j) {
        if (j % pp.p == 0) {
            throw FactorialNotInvertible(
                "binomial_half_coeffs: p divides " + std::to_string(j) +
                "; the recurrence needs jmax < p");
        }
        // g(j) = g(j-1) * (1/2 - (j-1)) / j
        std::uint64_t factor = sub_mod(half, (j - 1) % q, q);
        g[j] = mul_mod(g[j - 1], mul_mod(factor, inv_mod(j % q, q), q), q);
    }
    return g;
}

unsigned choose_s_log(double log_N, const PrimePower& pp, double eta) {
    if (!(log_N > 0.0)) throw BadArgument("choose_s: N must be >= 2");
    if (!(eta > 0.0)) throw BadArgument("choose_s: eta must be positive");
    double raw = std::floor(eta * log_N / (3000.0 * std::log(static_cast<double>(pp.p))));
    if (raw < 1.0) return 1;
    if (raw >= static_cast<double>(pp.k)) return pp.k;
    return static_cast<unsigned>(raw);
}

unsigned choose_s(std::uint64_t N, const PrimePower& pp, double eta) {
    if (N < 2) throw BadArgument("choose_s: N must be >= 2");
    return choose_s_log(std::log(static_cast<double>(N)), pp, eta);
}

ExpansionPlan build_expansion(const PrimePower& pp, unsigned s, std::uint64_t gamma) {
    if (s < 1 || s > pp.k) {
        throw BadArgument("build_expansion: s must satisfy 1 <= s <= k");
    }
    gamma %= pp.q;
    if (gamma % pp.p == 0) {
        throw BadArgument("build_expansion: gamma must be a unit mod p");
    }
    const std::uint64_t q = pp.q;
    const unsigned jmax = pp.k / s;
    std::vector<std::uint64_t> g = binomial_half_coeffs(pp, jmax);
    std::vector<std::uint64_t> f(jmax + 1);
    for (unsigned j = 0; j <= jmax; ++j) {
        std::uint64_t pjs = pp.pow_p(std::min<unsigned>(j * s, pp.k)) % q;  // 0 once js = k
        f[j] = mul_mod(g[j], mul_mod(pow_mod(gamma, j, q), pjs, q), q);
    }
    return ExpansionPlan{pp, s, gamma, std::move(g), std::move(f)};
}

std::uint64_t eval_poly(const ExpansionPlan& plan, std::uint64_t t) {
    const std::uint64_t q = plan.pp.q;
    t %= q;
    std::uint64_t acc = 0;
    for (auto it = plan.f_coeffs.rbegin(); it != plan.f_coeffs.rend(); ++it) {
        acc = add_mod(mul_mod(acc, t, q), *it, q);
    }
    return acc;
}

}  // namespace klab
