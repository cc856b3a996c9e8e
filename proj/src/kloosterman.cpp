#include "klab/kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "klab/padic.hpp"
#include "klab/parallel.hpp"

namespace klab {

namespace {

// Above this the batch-inverse table (two uint64 vectors) is not worth the
// memory; fall back to one extended gcd per unit.
constexpr std::uint64_t kBruteTableLimit = 1ull << 22;

std::uint64_t checked_pow(std::uint64_t b, unsigned e, bool& overflow) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (b != 0 && r > UINT64_MAX / b) {
            overflow = true;
            return 0;
        }
        r *= b;
    }
    overflow = false;
    return r;
}

std::uint64_t integer_root(std::uint64_t q, unsigned k) {
    std::uint64_t b = static_cast<std::uint64_t>(
        std::pow(static_cast<double>(q), 1.0 / static_cast<double>(k)));
    if (b < 1) b = 1;
    // std::pow can land one off either way; settle it in integers.
    bool ovf = false;
    while (b > 1 && checked_pow(b, k, ovf) > q) --b;
    for (;;) {
        std::uint64_t next = checked_pow(b + 1, k, ovf);
        if (ovf || next > q) break;
        ++b;
    }
    return b;
}

}  // namespace

double kloosterman_bruteforce(std::int64_t m, std::int64_t n, std::uint64_t q,
                              std::uint64_t cap) {
    if (q < 2) throw BadArgument("kloosterman_bruteforce: q must be >= 2");
    if (q > cap) {
        throw ModulusTooLarge("kloosterman_bruteforce: q = " + std::to_string(q) +
                              " exceeds the brute-force cap " + std::to_string(cap));
    }
    const std::uint64_t mr = reduce(m, q);
    const std::uint64_t nr = reduce(n, q);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(q);
    // A prime-power modulus turns the unit test into one remainder.
    std::uint64_t unit_p = 0;
    if (is_prime(q)) {
        unit_p = q;
    } else if (auto pp = detect_odd_prime_power(q)) {
        unit_p = pp->p;
    }
    auto is_unit = [&](std::uint64_t b) {
        return unit_p != 0 ? (b % unit_p != 0) : (std::gcd(b, q) == 1);
    };
    Kahan acc;
    auto add_term = [&](std::uint64_t b, std::uint64_t binv) {
        std::uint64_t v = add_mod(mul_mod(mr, b, q), mul_mod(nr, binv, q), q);
        acc.add(std::cos(step * static_cast<double>(v)));
    };
    if (q <= kBruteTableLimit) {
        std::vector<std::uint64_t> units;
        units.reserve(q - 1);
        for (std::uint64_t b = 1; b < q; ++b) {
            if (is_unit(b)) units.push_back(b);
        }
        // Batch inversion: one gcd for the whole unit group.
        std::vector<std::uint64_t> inv(units.size());
        std::uint64_t run = 1;
        for (std::size_t i = 0; i < units.size(); ++i) {
            inv[i] = run;  // product of units[0..i-1]
            run = mul_mod(run, units[i], q);
        }
        std::uint64_t inv_run = inv_mod(run, q);
        for (std::size_t i = units.size(); i-- > 0;) {
            inv[i] = mul_mod(inv_run, inv[i], q);
            inv_run = mul_mod(inv_run, units[i], q);
        }
        for (std::size_t i = 0; i < units.size(); ++i) add_term(units[i], inv[i]);
    } else {
        for (std::uint64_t b = 1; b < q; ++b) {
            if (!is_unit(b)) continue;
            add_term(b, inv_mod(b, q));
        }
    }
    return acc.result() / std::sqrt(static_cast<double>(q));
}

double explicit_formula_value(std::uint64_t r, const PrimePower& pp) {
    const std::uint64_t q = pp.q;
    r %= q;
    int chi = legendre(static_cast<std::int64_t>(r % pp.p), pp.p);
    if (chi == 0) return 0.0;
    double sign = (chi == 1 || pp.k % 2 == 0) ? 1.0 : -1.0;
    std::uint64_t two_r = add_mod(r, r, q);
    double angle = 2.0 * std::numbers::pi * (static_cast<double>(two_r) / static_cast<double>(q));
    double re = (theta_q(q) == ThetaQ::one) ? std::cos(angle) : -std::sin(angle);
    return 2.0 * sign * re;
}

double kloosterman_explicit(std::int64_t n, std::int64_t a, const PrimePower& pp) {
    if (pp.k < 2) {
        throw BadArgument("kloosterman_explicit: the formula requires k >= 2");
    }
    const std::uint64_t ar = reduce(a, pp.q);
    if (ar % pp.p == 0) {
        throw BadArgument("kloosterman_explicit: gcd(a, p) must be 1");
    }
    const std::uint64_t nr = reduce(n, pp.q);
    if (nr % pp.p == 0) return 0.0;
    const std::uint64_t na = mul_mod(nr, ar, pp.q);
    if (legendre(static_cast<std::int64_t>(na % pp.p), pp.p) == -1) return 0.0;
    return explicit_formula_value(hensel_sqrt(na, pp), pp);
}

std::optional<PrimePower> detect_odd_prime_power(std::uint64_t q) {
    if (q < 9 || (q & 1) == 0 || q > kModulusMax) return std::nullopt;
    // Largest exponent first: the first exact root is the smallest base, and
    // q is a prime power iff that base is prime.
    for (unsigned k = 62; k >= 2; --k) {
        std::uint64_t b = integer_root(q, k);
        if (b < 3) continue;
        bool ovf = false;
        if (checked_pow(b, k, ovf) != q || ovf) continue;
        if (!is_prime(b)) return std::nullopt;
        return PrimePower(b, k);
    }
    return std::nullopt;
}

double kloosterman(std::int64_t m, std::int64_t n, std::uint64_t q,
                   std::uint64_t brute_cap) {
    if (q < 2) throw BadArgument("kloosterman: q must be >= 2");
    if (auto pp = detect_odd_prime_power(q)) {
        std::uint64_t mr = reduce(m, q);
        std::uint64_t nr = reduce(n, q);
        if (nr % pp->p != 0) {
            return kloosterman_explicit(static_cast<std::int64_t>(mr),
                                        static_cast<std::int64_t>(nr), *pp);
        }
        if (mr % pp->p != 0) {
            // K(m, n; q) = K(n, m; q): substitute b -> b^-1 in the defining sum.
            return kloosterman_explicit(static_cast<std::int64_t>(nr),
                                        static_cast<std::int64_t>(mr), *pp);
        }
    }
    return kloosterman_bruteforce(m, n, q, brute_cap);
}

}  // namespace klab
