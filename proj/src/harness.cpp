#include "klab/harness.hpp"

#include <chrono>
#include <cmath>

#include "klab/padic.hpp"
#include "klab/parallel.hpp"

namespace klab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t check_explicit_args(std::int64_t a, const PrimePower& pp) {
    if (pp.k < 2) throw BadArgument("harness: k must be >= 2");
    std::uint64_t ar = reduce(a, pp.q);
    if (ar % pp.p == 0) throw BadArgument("harness: gcd(a, p) must be 1");
    return ar;
}

// K(arg, a; q) along the configured path. arg is already a plain integer
// (reduction happens inside the evaluators).
double eval_K(std::uint64_t arg, std::uint64_t a_res, const PrimePower& pp,
              const HarnessOptions& opt) {
    if (opt.path == EvalPath::explicit_formula) {
        return kloosterman_explicit(static_cast<std::int64_t>(arg % pp.q),
                                    static_cast<std::int64_t>(a_res), pp);
    }
    return kloosterman_bruteforce(static_cast<std::int64_t>(arg % pp.q),
                                  static_cast<std::int64_t>(a_res), pp.q,
                                  opt.brute_force_cap);
}

SumReport finish_report(const Partial& part, const PrimePower& pp,
                        Clock::time_point start, std::string params) {
    SumReport rep;
    rep.value = part.acc.result();
    rep.n_terms = part.visited;
    rep.trivial_bound = 2.0 * static_cast<double>(part.units);
    if (rep.trivial_bound > 0.0) {
        rep.delta = cancellation_exponent(rep.value, rep.trivial_bound, pp.q);
        rep.delta_floored = std::abs(rep.value) < 1e-12;
    }
    rep.wall_ms = ms_since(start);
    rep.params = std::move(params);
    return rep;
}

}  // namespace

double cancellation_exponent(double value, double trivial_bound, std::uint64_t q) {
    if (!(trivial_bound > 0.0)) {
        throw BadArgument("cancellation_exponent: trivial_bound must be positive");
    }
    if (q < 2) throw BadArgument("cancellation_exponent: q must be >= 2");
    double denom = std::max(std::abs(value), 1e-12);
    return std::log(trivial_bound / denom) / std::log(static_cast<double>(q));
}

SumReport consecutive_sum(std::uint64_t N, std::int64_t a, const PrimePower& pp,
                          const HarnessOptions& opt) {
    const std::uint64_t a_res = check_explicit_args(a, pp);
    if (N > opt.work_cap) {
        throw WorkCapExceeded("consecutive_sum: N exceeds the work cap");
    }
    auto start = Clock::now();
    Partial part = chunked_reduce(N, opt.workers,
        [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
            for (std::uint64_t i = lo; i < hi; ++i) {
                std::uint64_t n = i + 1;
                ++out.visited;
                if (n % pp.p != 0) ++out.units;
                out.acc.add(eval_K(n, a_res, pp, opt));
            }
        });
    return finish_report(part, pp, start,
                         "consecutive N=" + std::to_string(N) + " a=" + std::to_string(a) +
                         " q=" + std::to_string(pp.q));
}

SumReport bilinear_sum(const WeightSeq& A, const WeightSeq& B, std::uint64_t M,
                       std::uint64_t N, std::int64_t a, const PrimePower& pp,
                       const HarnessOptions& opt) {
    const std::uint64_t a_res = check_explicit_args(a, pp);
    if (M < 1 || N < 1) throw BadArgument("bilinear_sum: M, N must be >= 1");
    if (M > opt.work_cap / N) {
        throw WorkCapExceeded("bilinear_sum: M*N exceeds the work cap");
    }
    auto start = Clock::now();
    const std::vector<double> wa = A.materialize(1, M);
    const std::vector<double> wb = B.materialize(1, N);
    Partial part = chunked_reduce(M * N, opt.workers,
        [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
            for (std::uint64_t i = lo; i < hi; ++i) {
                std::uint64_t m = i / N + 1;
                std::uint64_t n = i % N + 1;
                std::uint64_t arg = m * n;
                ++out.visited;
                if (arg % pp.p != 0) ++out.units;
                out.acc.add(wa[m - 1] * wb[n - 1] * eval_K(arg, a_res, pp, opt));
            }
        });
    return finish_report(part, pp, start,
                         "bilinear M=" + std::to_string(M) + " N=" + std::to_string(N) +
                         " a=" + std::to_string(a) + " q=" + std::to_string(pp.q));
}

double t_sum(unsigned s, std::uint64_t u, std::uint64_t v, const WeightSeq& A,
             std::uint64_t M, std::uint64_t N, std::int64_t a, const PrimePower& pp,
             const HarnessOptions& opt) {
    const std::uint64_t a_res = check_explicit_args(a, pp);
    if (s < 1 || s > pp.k) throw BadArgument("t_sum: s must satisfy 1 <= s <= k");
    const std::uint64_t ps = pp.pow_p(s);
    const std::uint64_t u0 = u % ps;
    const std::uint64_t v0 = v % ps;
    if (u0 % pp.p == 0 || v0 % pp.p == 0) {
        throw BadArgument("t_sum: u and v must be units mod p");
    }
    if (legendre(static_cast<std::int64_t>(
                     mul_mod(mul_mod(a_res % pp.p, u0 % pp.p, pp.p), v0 % pp.p, pp.p)),
                 pp.p) != 1) {
        throw BadArgument("t_sum: a*u*v must be a quadratic residue mod p");
    }
    const std::uint64_t count_n = (N >= v0 && v0 >= 1) ? (N - v0) / ps + 1 : 0;
    const std::uint64_t count_m = (M >= u0 && u0 >= 1) ? (M - u0) / ps + 1 : 0;
    if (count_n != 0 && count_m > opt.work_cap / std::max<std::uint64_t>(count_n, 1)) {
        throw WorkCapExceeded("t_sum: class size exceeds the work cap");
    }
    if (count_n == 0 || count_m == 0) return 0.0;
    const std::vector<double> wa = A.materialize(1, M);
    Partial part = chunked_reduce(count_n, opt.workers,
        [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                std::uint64_t n = v0 + idx * ps;
                Kahan inner;
                for (std::uint64_t m = u0; m <= M; m += ps) {
                    std::uint64_t na = mul_mod(mul_mod(m % pp.q, n % pp.q, pp.q), a_res, pp.q);
                    if (legendre(static_cast<std::int64_t>(na % pp.p), pp.p) != 1) {
                        continue;  // cannot happen inside a surviving class
                    }
                    std::uint64_t r = hensel_sqrt(na, pp);
                    inner.add(wa[m - 1] * 0.5 * explicit_formula_value(r, pp));
                }
                out.acc.add(std::abs(inner.result()));
                ++out.visited;
            }
        });
    return part.acc.result();
}

SumReport hyperbolic_sum(const WeightSeq& A, const WeightSeq& B, std::uint64_t U,
                         std::uint64_t V, std::uint64_t X, std::int64_t a,
                         const PrimePower& pp, const HarnessOptions& opt) {
    const std::uint64_t a_res = check_explicit_args(a, pp);
    if (U < 1 || V < 1) throw BadArgument("hyperbolic_sum: U, V must be >= 1");
    auto start = Clock::now();
    if (U > X / V) {
        // empty region
        SumReport rep;
        rep.params = "hyperbolic U=" + std::to_string(U) + " V=" + std::to_string(V) +
                     " X=" + std::to_string(X) + " a=" + std::to_string(a) +
                     " q=" + std::to_string(pp.q);
        rep.wall_ms = ms_since(start);
        return rep;
    }
    const std::uint64_t m_hi = X / V;
    std::uint64_t total_terms = 0;
    for (std::uint64_t m = U; m <= m_hi; ++m) total_terms += X / m - V + 1;
    if (total_terms > opt.work_cap) {
        throw WorkCapExceeded("hyperbolic_sum: region size exceeds the work cap");
    }
    const std::vector<double> wa = A.materialize(U, m_hi);
    const std::vector<double> wb = B.materialize(V, X / U);
    // Chunked over the outer index m; each inner n-row stays within its chunk.
    Partial part = chunked_reduce(m_hi - U + 1, opt.workers,
        [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                std::uint64_t m = U + idx;
                std::uint64_t n_hi = X / m;
                for (std::uint64_t n = V; n <= n_hi; ++n) {
                    std::uint64_t arg = m * n;
                    ++out.visited;
                    if (arg % pp.p != 0) ++out.units;
                    out.acc.add(wa[m - U] * wb[n - V] * eval_K(arg, a_res, pp, opt));
                }
            }
        });
    return finish_report(part, pp, start,
                         "hyperbolic U=" + std::to_string(U) + " V=" + std::to_string(V) +
                         " X=" + std::to_string(X) + " a=" + std::to_string(a) +
                         " q=" + std::to_string(pp.q));
}

SumReport prime_sum(std::uint64_t X, std::int64_t a, const PrimePower& pp,
                    const HarnessOptions& opt) {
    const std::uint64_t a_res = check_explicit_args(a, pp);
    auto start = Clock::now();
    SieveTables tables(X);
    auto primes = tables.primes_up_to(X);
    Partial part = chunked_reduce(primes.size(), opt.workers,
        [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
            for (std::uint64_t i = lo; i < hi; ++i) {
                std::uint64_t l = primes[i];
                if (l == pp.p) continue;  // vanishes identically
                ++out.visited;
                ++out.units;
                out.acc.add(eval_K(l, a_res, pp, opt));
            }
        });
    return finish_report(part, pp, start,
                         "prime-sum X=" + std::to_string(X) + " a=" + std::to_string(a) +
                         " q=" + std::to_string(pp.q));
}

SumReport lambda_sum(std::uint64_t X, std::int64_t a, const PrimePower& pp,
                     const HarnessOptions& opt) {
    const std::uint64_t a_res = check_explicit_args(a, pp);
    auto start = Clock::now();
    SieveTables tables(X);
    Partial part = chunked_reduce(X, opt.workers,
        [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
            for (std::uint64_t i = lo; i < hi; ++i) {
                std::uint64_t n = i + 1;
                double lam = tables.lambda(n);
                if (lam == 0.0) continue;
                ++out.visited;
                if (n % pp.p != 0) ++out.units;
                out.acc.add(lam * eval_K(n, a_res, pp, opt));
            }
        });
    return finish_report(part, pp, start,
                         "lambda-sum X=" + std::to_string(X) + " a=" + std::to_string(a) +
                         " q=" + std::to_string(pp.q));
}

VaughanSplit vaughan_split(std::uint64_t X, std::uint64_t U, std::uint64_t V,
                           std::int64_t a, const PrimePower& pp,
                           const HarnessOptions& opt) {
    const std::uint64_t a_res = check_explicit_args(a, pp);
    if (X > opt.work_cap) throw WorkCapExceeded("vaughan_split: X exceeds the work cap");
    SieveTables tables(X);
    // Cache f over [1, X] once; the four component sums then read the table.
    std::vector<double> fv(X + 1, 0.0);
    chunked_reduce(X, opt.workers,
        [&](std::uint64_t lo, std::uint64_t hi, Partial&) {
            for (std::uint64_t i = lo; i < hi; ++i) {
                fv[i + 1] = eval_K(i + 1, a_res, pp, opt);
            }
        });
    return vaughan_split_f(X, U, V,
                           [&](std::uint64_t n) { return fv[n]; }, tables);
}

VaughanSplit vaughan_split_f(std::uint64_t X, std::uint64_t U, std::uint64_t V,
                             const std::function<double(std::uint64_t)>& f,
                             const SieveTables& tables) {
    if (U < 2 || V < 2 || U > X || V > X) {
        throw BadArgument("vaughan_split: cutoffs must satisfy 1 < U, V <= X");
    }
    if (tables.limit() < X) throw BadArgument("vaughan_split: sieve limit below X");
    VaughanSplit out;
    out.U = U;
    out.V = V;
    out.X = X;

    // Sigma1 = |sum_{n<=U} Lambda(n) f(n)|
    {
        Kahan s;
        for (std::uint64_t n = 1; n <= U; ++n) {
            double lam = tables.lambda(n);
            if (lam != 0.0) s.add(lam * f(n));
        }
        out.sigma1 = std::abs(s.result());
    }

    // Sigma2 = sum_{v<=UV} |sum_{s<=X/v} f(sv)|
    {
        Kahan total;
        std::uint64_t v_hi = std::min(U * V, X);
        for (std::uint64_t v = 1; v <= v_hi; ++v) {
            Kahan inner;
            std::uint64_t s_hi = X / v;
            for (std::uint64_t s = 1; s <= s_hi; ++s) inner.add(f(s * v));
            total.add(std::abs(inner.result()));
        }
        out.sigma2 = total.result();
    }

    // Sigma3 = sum_{v<=V} max_{w>=1} |sum_{w<=s<=X/v} f(sv)|, the max taken
    // exactly over prefix sums: max(P(L) - min P, max P - P(L)) with P(0) = 0.
    {
        Kahan total;
        for (std::uint64_t v = 1; v <= V; ++v) {
            std::uint64_t L = X / v;
            Kahan prefix;
            double pmin = 0.0, pmax = 0.0;
            for (std::uint64_t s = 1; s <= L; ++s) {
                prefix.add(f(s * v));
                pmin = std::min(pmin, prefix.result());
                pmax = std::max(pmax, prefix.result());
            }
            double pl = prefix.result();
            total.add(std::max(pl - pmin, pmax - pl));
        }
        out.sigma3 = total.result();
    }

    // Sigma4 = sum_{uv<=X, u>U, v>V} Lambda(u) (sum_{d|v, d<=V} mu(d)) f(uv)
    {
        Kahan s;
        std::uint64_t v_max = (U + 1 <= X) ? X / (U + 1) : 0;
        std::vector<std::int64_t> mp(v_max + 1, 0);
        for (std::uint64_t v = V + 1; v <= v_max; ++v) {
            mp[v] = tables.mu_partial_divisor_sum(v, V);
        }
        for (std::uint64_t u = U + 1; u <= X; ++u) {
            double lam = tables.lambda(u);
            if (lam == 0.0) continue;
            std::uint64_t hi = X / u;
            for (std::uint64_t v = V + 1; v <= hi; ++v) {
                if (mp[v] == 0) continue;
                s.add(lam * static_cast<double>(mp[v]) * f(u * v));
            }
        }
        out.sigma4 = s.result();
        out.sigma4_abs = std::abs(out.sigma4);
    }
    return out;
}

}  // namespace klab
