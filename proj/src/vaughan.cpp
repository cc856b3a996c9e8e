#include <cmath>

#include "klab/harness.hpp"

namespace klab {

// Exact Vaughan decomposition of Lambda: with
//   a1(n) = Lambda(n) [n <= U]
//   a2(n) = -sum_{m d r = n, m <= U, d <= V} Lambda(m) mu(d)
//   a3(n) = sum_{d h = n, d <= V} mu(d) log h
//   a4(n) = -sum_{m k = n, m > U, k > 1} Lambda(m) (sum_{d | k, d <= V} mu(d))
// the identity a1 + a2 + a3 + a4 = Lambda(n) holds for every n >= 1.
VaughanCoeffs vaughan_coefficients(std::uint64_t X, std::uint64_t U, std::uint64_t V,
                                   const SieveTables& tables) {
    if (tables.limit() < X) {
        throw BadArgument("vaughan_coefficients: sieve limit below X");
    }
    VaughanCoeffs c;
    c.a1.assign(X + 1, 0.0);
    c.a2.assign(X + 1, 0.0);
    c.a3.assign(X + 1, 0.0);
    c.a4.assign(X + 1, 0.0);

    for (std::uint64_t n = 1; n <= std::min(U, X); ++n) {
        c.a1[n] = tables.lambda(n);
    }

    for (std::uint64_t m = 1; m <= std::min(U, X); ++m) {
        double lam = tables.lambda(m);
        if (lam == 0.0) continue;
        for (std::uint64_t d = 1; d <= std::min(V, X / m); ++d) {
            int mu = tables.mu(d);
            if (mu == 0) continue;
            double w = lam * mu;
            std::uint64_t md = m * d;
            for (std::uint64_t r = 1; r <= X / md; ++r) {
                c.a2[md * r] -= w;
            }
        }
    }

    for (std::uint64_t d = 1; d <= std::min(V, X); ++d) {
        int mu = tables.mu(d);
        if (mu == 0) continue;
        for (std::uint64_t h = 1; h <= X / d; ++h) {
            c.a3[d * h] += mu * std::log(static_cast<double>(h));
        }
    }

    for (std::uint64_t m = U + 1; m <= X; ++m) {
        double lam = tables.lambda(m);
        if (lam == 0.0) continue;
        for (std::uint64_t k = 2; k <= X / m; ++k) {
            std::int64_t mp = tables.mu_partial_divisor_sum(k, V);
            if (mp == 0) continue;
            c.a4[m * k] -= lam * static_cast<double>(mp);
        }
    }
    return c;
}

}  // namespace klab
