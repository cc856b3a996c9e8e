#include "klab/modular.hpp"

#include <algorithm>
#include <utility>

namespace klab {

std::uint64_t inv_mod(std::uint64_t x, std::uint64_t q) {
    if (q == 0) throw BadArgument("inv_mod: modulus must be positive");
    if (q == 1) return 0;
    // q < 2^63 keeps every Bezout coefficient inside int64.
    std::int64_t a = static_cast<std::int64_t>(x % q);
    std::int64_t b = static_cast<std::int64_t>(q);
    std::int64_t u = 1, v = 0;
    while (b != 0) {
        std::int64_t t = a / b;
        a -= t * b;
        std::swap(a, b);
        u -= t * v;
        std::swap(u, v);
    }
    if (a != 1) {
        throw NotInvertible("inv_mod: gcd(" + std::to_string(x % q) + ", " +
                            std::to_string(q) + ") = " + std::to_string(a));
    }
    return u < 0 ? static_cast<std::uint64_t>(u + static_cast<std::int64_t>(q))
                 : static_cast<std::uint64_t>(u);
}

int legendre(std::int64_t n, std::uint64_t p) {
    std::uint64_t r = reduce(n, p);
    if (r == 0) return 0;
    std::uint64_t e = pow_mod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

std::uint64_t sqrt_mod_p(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (legendre(static_cast<std::int64_t>(a), p) != 1) {
        throw NotAResidue("sqrt_mod_p: " + std::to_string(a) +
                          " is not a square mod " + std::to_string(p));
    }
    std::uint64_t r;
    if (p % 4 == 3) {
        r = pow_mod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks on p - 1 = Q * 2^S.
        std::uint64_t Q = p - 1;
        unsigned S = 0;
        while ((Q & 1) == 0) {
            Q >>= 1;
            ++S;
        }
        std::uint64_t z = 2;
        while (legendre(static_cast<std::int64_t>(z), p) != -1) ++z;
        std::uint64_t M = S;
        std::uint64_t c = pow_mod(z, Q, p);
        std::uint64_t t = pow_mod(a, Q, p);
        std::uint64_t R = pow_mod(a, (Q + 1) / 2, p);
        while (t != 1) {
            std::uint64_t i = 0, tt = t;
            while (tt != 1) {
                tt = mul_mod(tt, tt, p);
                ++i;
            }
            std::uint64_t b = pow_mod(c, std::uint64_t{1} << (M - i - 1), p);
            R = mul_mod(R, b, p);
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            M = i;
        }
        r = R;
    }
    return std::min(r, p - r);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t w : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(w, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimePower::PrimePower(std::uint64_t p_, unsigned k_) : p(p_), k(k_), q(1) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p)) {
        throw BadArgument("PrimePower: p must be an odd prime, got " +
                          std::to_string(p));
    }
    if (k < 1) throw BadArgument("PrimePower: k must be >= 1");
    for (unsigned i = 0; i < k; ++i) {
        if (q > kModulusMax / p) {
            throw BadArgument("PrimePower: " + std::to_string(p) + "^" +
                              std::to_string(k) + " exceeds the 63-bit modulus width");
        }
        q *= p;
    }
}

std::uint64_t PrimePower::pow_p(unsigned e) const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

}  // namespace klab
