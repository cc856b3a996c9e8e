// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run all: ./acceptance        Run one: ./acceptance <n>
// Criteria 8-10 drive the klab binary; point KLAB_BIN at it (ctest does).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "klab/harness.hpp"
#include "klab/padic.hpp"
#include "klab/runner.hpp"

using namespace klab;

namespace {

int g_checks_failed = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_checks_failed;
        std::fprintf(stderr, "  check failed: %s\n", what.c_str());
    }
}

std::vector<PrimePower> small_prime_powers() {
    std::vector<PrimePower> out;
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        for (unsigned k = 2;; ++k) {
            PrimePower pp(p, k);
            if (pp.q > 100000) break;
            out.push_back(pp);
        }
    }
    return out;
}

std::string klab_bin() {
    const char* bin = std::getenv("KLAB_BIN");
    return bin ? bin : "build/tools/klab";
}

std::string golden_dir() {
    const char* dir = std::getenv("KLAB_GOLDEN_DIR");
    return dir ? dir : "tests/golden";
}

int run_cmd(const std::string& cmd) {
    int rc = std::system((cmd + " >/dev/null 2>/dev/null").c_str());
    return WEXITSTATUS(rc);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;
    std::ostringstream ss;
    ss << f.rdbuf();
    out = ss.str();
    return true;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// ---------------------------------------------------------------------------
// 1. Explicit formula vs definition, every odd prime power q <= 1e5, k >= 2.
// ---------------------------------------------------------------------------
void criterion1() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    const std::vector<PrimePower> pps = small_prime_powers();
    for (const PrimePower& pp : pps) {
        for (int i = 0; i < 200; ++i) {
            std::int64_t n = static_cast<std::int64_t>(rng() % pp.q);
            std::uint64_t a = rng() % pp.q;
            while (a % pp.p == 0) a = rng() % pp.q;
            double fast = kloosterman_explicit(n, static_cast<std::int64_t>(a), pp);
            double slow = kloosterman_bruteforce(n, static_cast<std::int64_t>(a), pp.q);
            worst = std::max(worst, std::abs(fast - slow));
        }
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    expect(worst <= 1e-9, "max |explicit - bruteforce| = " + std::to_string(worst));
    expect(ms < 60000.0, "sweep took " + std::to_string(ms) + " ms");
    std::printf("  moduli: %zu, draws per modulus: 200, max deviation %.3g\n",
                pps.size(), worst);
}

// ---------------------------------------------------------------------------
// 2. Vanishing when p | n: explicit exactly 0.0, brute force <= 1e-9.
// ---------------------------------------------------------------------------
void criterion2() {
    std::mt19937_64 rng(1002);
    auto pps = small_prime_powers();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PrimePower& pp = pps[rng() % pps.size()];
        std::uint64_t n = pp.p * (rng() % (pp.q / pp.p));
        std::uint64_t a = rng() % pp.q;
        while (a % pp.p == 0) a = rng() % pp.q;
        double fast = kloosterman_explicit(static_cast<std::int64_t>(n),
                                           static_cast<std::int64_t>(a), pp);
        expect(fast == 0.0, "explicit value not literal zero");
        worst = std::max(worst, std::abs(kloosterman_bruteforce(
                                    static_cast<std::int64_t>(n),
                                    static_cast<std::int64_t>(a), pp.q)));
    }
    expect(worst <= 1e-9, "brute-force vanishing off by " + std::to_string(worst));
    std::printf("  1000 draws, max |bruteforce| at a vanishing point %.3g\n", worst);
}

// ---------------------------------------------------------------------------
// 3. The formula value is invariant under the root choice r -> q - r.
// ---------------------------------------------------------------------------
void criterion3() {
    std::mt19937_64 rng(1003);
    std::vector<PrimePower> pps = small_prime_powers();
    pps.push_back(PrimePower(3, 13));
    pps.push_back(PrimePower(5, 13));
    pps.push_back(PrimePower(7, 10));
    pps.push_back(PrimePower(11, 9));
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        const PrimePower& pp = pps[rng() % pps.size()];
        std::uint64_t n = rng() % pp.q;
        std::uint64_t a = rng() % pp.q;
        if (a % pp.p == 0 || n % pp.p == 0) continue;
        std::uint64_t na = mul_mod(n, a, pp.q);
        if (legendre(static_cast<std::int64_t>(na % pp.p), pp.p) != 1) continue;
        std::uint64_t r = hensel_sqrt(na, pp);
        worst = std::max(worst, std::abs(explicit_formula_value(r, pp) -
                                         explicit_formula_value(pp.q - r, pp)));
        ++done;
    }
    expect(worst <= 1e-12, "root-choice deviation " + std::to_string(worst));
    std::printf("  1000 evaluations, max |F(r) - F(q-r)| = %.3g\n", worst);
}

// ---------------------------------------------------------------------------
// 4. Truncated p-adic square-root law, plus Hensel lifts squaring back.
// ---------------------------------------------------------------------------
void criterion4() {
    std::mt19937_64 rng(1004);
    long plans = 0, points = 0;
    for (std::uint64_t p : {3, 5, 7, 11}) {
        for (unsigned k = 2; k <= 20; ++k) {
            // 11^19 and 11^20 exceed the 63-bit modulus width; the law is
            // exercised over every representable (p, k) up to 20.
            if (p == 11 && k > 18) break;
            PrimePower pp(p, k);
            for (unsigned s = 1; s <= k; ++s) {
                if (k / s >= p) continue;
                std::uint64_t gamma = rng() % pp.q;
                while (gamma % p == 0) gamma = rng() % pp.q;
                ExpansionPlan plan = build_expansion(pp, s, gamma);
                ++plans;
                std::uint64_t scale = mul_mod(gamma, pp.pow_p(s) % pp.q, pp.q);
                for (int i = 0; i < 100; ++i) {
                    std::uint64_t t = rng() % pp.q;
                    std::uint64_t v = eval_poly(plan, t);
                    std::uint64_t want = add_mod(1, mul_mod(scale, t, pp.q), pp.q);
                    if (mul_mod(v, v, pp.q) != want) {
                        expect(false, "expansion law fails at p=" + std::to_string(p) +
                                          " k=" + std::to_string(k) + " s=" + std::to_string(s));
                        break;
                    }
                    ++points;
                }
            }
        }
    }
    int lifts = 0;
    while (lifts < 1000) {
        std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7, 11}[rng() % 4];
        unsigned k = 2 + static_cast<unsigned>(rng() % ((p == 11) ? 17 : 19));
        PrimePower pp(p, k);
        std::uint64_t a = rng() % pp.q;
        if (a % p == 0 || legendre(static_cast<std::int64_t>(a % p), p) != 1) continue;
        std::uint64_t r = hensel_sqrt(a, pp);
        if (mul_mod(r, r, pp.q) != a) {
            expect(false, "hensel_sqrt(a)^2 != a");
            break;
        }
        ++lifts;
    }
    std::printf("  %ld plans, %ld polynomial points, %d lifts checked exactly\n",
                plans, points, lifts);
}

// ---------------------------------------------------------------------------
// 5. Exact Vaughan reconstruction and component-vs-oracle agreement.
// ---------------------------------------------------------------------------
void criterion5() {
    const std::uint64_t X = 10000;
    SieveTables t(X);
    const std::uint64_t cube_root = 21;  // floor(X^(1/3)) = floor(21.54)
    double worst = 0.0;
    for (auto [U, V] : {std::pair<std::uint64_t, std::uint64_t>{10, 10},
                        {21, 21},
                        {cube_root, cube_root}}) {
        VaughanCoeffs c = vaughan_coefficients(X, U, V, t);
        for (std::uint64_t n = 1; n <= X; ++n) {
            worst = std::max(worst, std::abs(c.a1[n] + c.a2[n] + c.a3[n] + c.a4[n] -
                                             t.lambda(n)));
        }
    }
    expect(worst <= 1e-9, "identity deviation " + std::to_string(worst));

    // Component sums vs naive double loops at X = 100, q = 3^4.
    const std::uint64_t Xs = 100;
    PrimePower pp(3, 4);
    SieveTables ts(Xs);
    std::vector<double> fv(Xs + 1, 0.0);
    for (std::uint64_t n = 1; n <= Xs; ++n) {
        fv[n] = kloosterman_explicit(static_cast<std::int64_t>(n), 1, pp);
    }
    double comp_worst = 0.0;
    for (auto [U, V] : {std::pair<std::uint64_t, std::uint64_t>{4, 4}, {10, 10}}) {
        VaughanSplit split = vaughan_split(Xs, U, V, 1, pp);
        double s1 = 0.0;
        for (std::uint64_t n = 1; n <= U; ++n) s1 += ts.lambda(n) * fv[n];
        s1 = std::abs(s1);
        double s2 = 0.0;
        for (std::uint64_t v = 1; v <= U * V && v <= Xs; ++v) {
            double inner = 0.0;
            for (std::uint64_t s = 1; s * v <= Xs; ++s) inner += fv[s * v];
            s2 += std::abs(inner);
        }
        double s3 = 0.0;
        for (std::uint64_t v = 1; v <= V; ++v) {
            double best = 0.0;
            for (std::uint64_t w = 1; w <= Xs / v + 1; ++w) {
                double sum = 0.0;
                for (std::uint64_t s = w; s * v <= Xs; ++s) sum += fv[s * v];
                best = std::max(best, std::abs(sum));
            }
            s3 += best;
        }
        double s4 = 0.0;
        for (std::uint64_t u = U + 1; u <= Xs; ++u) {
            for (std::uint64_t v = V + 1; u * v <= Xs; ++v) {
                double md = 0.0;
                for (std::uint64_t d = 1; d <= V && d <= v; ++d) {
                    if (v % d == 0) md += ts.mu(d);
                }
                s4 += ts.lambda(u) * md * fv[u * v];
            }
        }
        comp_worst = std::max({comp_worst, std::abs(split.sigma1 - s1),
                               std::abs(split.sigma2 - s2), std::abs(split.sigma3 - s3),
                               std::abs(split.sigma4 - s4)});
    }
    expect(comp_worst <= 1e-9, "component deviation " + std::to_string(comp_worst));
    std::printf("  identity max deviation %.3g, component max deviation %.3g\n",
                worst, comp_worst);
}

// ---------------------------------------------------------------------------
// 6. |S_{a,q}(A,B;M,N)| <= 2 sum* sum* T_s(u,v) on random parameter sets.
// ---------------------------------------------------------------------------
void criterion6() {
    std::mt19937_64 rng(1006);
    const PrimePower moduli[3] = {PrimePower(3, 6), PrimePower(5, 5), PrimePower(7, 4)};
    double worst_margin = 1e300;
    for (int set = 0; set < 50; ++set) {
        const PrimePower& pp = moduli[rng() % 3];
        unsigned s = 1 + static_cast<unsigned>(rng() % 2);
        std::uint64_t M = 10 + rng() % 191;
        std::uint64_t N = 10 + rng() % 191;
        std::uint64_t a = rng() % pp.q;
        while (a % pp.p == 0) a = rng() % pp.q;
        WeightSeq A = WeightSeq::rademacher(rng());
        WeightSeq B = WeightSeq::rademacher(rng());
        double S = bilinear_sum(A, B, M, N, static_cast<std::int64_t>(a), pp).value;
        std::uint64_t ps = pp.pow_p(s);
        double rhs = 0.0;
        for (std::uint64_t u = 1; u <= ps; ++u) {
            if (u % pp.p == 0) continue;
            for (std::uint64_t v = 1; v <= ps; ++v) {
                if (v % pp.p == 0) continue;
                std::uint64_t auv = mul_mod(mul_mod(a % pp.p, u % pp.p, pp.p),
                                            v % pp.p, pp.p);
                if (legendre(static_cast<std::int64_t>(auv), pp.p) != 1) continue;
                rhs += t_sum(s, u, v, A, M, N, static_cast<std::int64_t>(a), pp);
            }
        }
        worst_margin = std::min(worst_margin, 2.0 * rhs - std::abs(S));
        expect(std::abs(S) <= 2.0 * rhs + 1e-9,
               "set " + std::to_string(set) + ": |S| = " + std::to_string(std::abs(S)) +
                   " > 2*sum T = " + std::to_string(2.0 * rhs));
    }
    std::printf("  50 parameter sets, smallest slack 2*sumT - |S| = %.6g\n", worst_margin);
}

// ---------------------------------------------------------------------------
// 7. Harness sums agree when every evaluation swaps to the brute-force path.
// ---------------------------------------------------------------------------
void criterion7() {
    std::mt19937_64 rng(1007);
    HarnessOptions brute;
    brute.path = EvalPath::brute_force;
    double worst = 0.0;
    auto close = [&](const SumReport& x, const SumReport& y, const std::string& what) {
        worst = std::max(worst, std::abs(x.value - y.value));
        expect(std::abs(x.value - y.value) <= 1e-8, what + " off by more than 1e-8");
        expect(x.n_terms == y.n_terms, what + " term counts differ");
    };
    const PrimePower moduli[4] = {PrimePower(3, 7), PrimePower(5, 4), PrimePower(7, 3),
                                  PrimePower(11, 3)};
    for (int i = 0; i < 10; ++i) {
        const PrimePower& pp = moduli[rng() % 4];
        std::int64_t a = static_cast<std::int64_t>(1 + rng() % (pp.p - 1));

        std::uint64_t N = 50 + rng() % 350;
        close(consecutive_sum(N, a, pp), consecutive_sum(N, a, pp, brute), "consecutive");

        WeightSeq A = WeightSeq::rademacher(rng());
        WeightSeq B = WeightSeq::rademacher(rng());
        std::uint64_t M2 = 5 + rng() % 20, N2 = 5 + rng() % 20;
        close(bilinear_sum(A, B, M2, N2, a, pp), bilinear_sum(A, B, M2, N2, a, pp, brute),
              "bilinear");

        std::uint64_t X = 100 + rng() % 200;
        close(hyperbolic_sum(A, B, 2, 2, X, a, pp), hyperbolic_sum(A, B, 2, 2, X, a, pp, brute),
              "hyperbolic");
        close(prime_sum(X * 4, a, pp), prime_sum(X * 4, a, pp, brute), "prime-sum");
        close(lambda_sum(X * 4, a, pp), lambda_sum(X * 4, a, pp, brute), "lambda-sum");
    }
    std::printf("  10 parameter sets x 5 operations, max |explicit - brute| = %.3g\n",
                worst);
}

// ---------------------------------------------------------------------------
// 8. prime_sum at X = 1e6, q = 5^13 under 5 s single-worker; brute force at
//    this q is structurally rejected. Value pinned as a golden file.
// ---------------------------------------------------------------------------
void criterion8() {
    PrimePower pp(5, 13);
    auto start = std::chrono::steady_clock::now();
    SumReport rep = prime_sum(1000000, 1, pp);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    expect(ms < 5000.0, "prime_sum took " + std::to_string(ms) + " ms");
    expect(rep.n_terms == 78497, "expected pi(1e6) - 1 = 78497 terms (l = 5 vanishes)");
    bool rejected = false;
    try {
        kloosterman_bruteforce(2, 1, pp.q);
    } catch (const ModulusTooLarge&) {
        rejected = true;
    }
    expect(rejected, "brute force at q = 5^13 must be rejected by the cap");

    std::string golden_path = golden_dir() + "/prime_sum_5p13.txt";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g\n", rep.value);
    std::string golden;
    if (read_file(golden_path, golden)) {
        expect(golden == buf, "prime_sum value drifted from the pinned golden");
    } else {
        write_file(golden_path, buf);
        std::printf("  pinned new golden %s\n", golden_path.c_str());
    }
    std::printf("  X=1e6, q=5^13: value %.8g over %llu terms in %.0f ms\n", rep.value,
                static_cast<unsigned long long>(rep.n_terms), ms);
}

// ---------------------------------------------------------------------------
// 9. Scan X = 2^20 .. 2^10 at q = 3^13: delta > 0 at the largest X, rerun
//    byte-identical, bytes pinned as a golden file.
// ---------------------------------------------------------------------------
// Distinct file names per criterion so parallel ctest runs cannot collide.
std::string scan_config_path(const std::string& tag) {
    std::string path = "acceptance_scan_" + tag + ".json";
    write_file(path,
               R"({"mode":"scan","scan_of":"prime-sum","p":3,"k":13,"a":1,)"
               R"("X":1048576,"scan_min":1024,"out":"acceptance_scan_)" +
                   tag + R"(.csv"})");
    return path;
}

void criterion9() {
    std::string cfg = scan_config_path("c9");
    expect(run_cmd(klab_bin() + " " + cfg) == 0, "scan run failed");
    std::string first;
    expect(read_file("acceptance_scan_c9.csv", first), "scan wrote no CSV");

    // 11 grid points, strictly decreasing X, delta > 0 at the top point.
    std::istringstream ss(first);
    std::string line;
    std::getline(ss, line);  // header
    std::vector<std::vector<std::string>> rows;
    while (std::getline(ss, line)) rows.push_back(split_csv(line));
    expect(rows.size() == 11, "expected 11 scan rows, got " + std::to_string(rows.size()));
    if (!rows.empty()) {
        expect(rows[0][5] == "1048576", "top row X mismatch");
        double delta = std::stod(rows[0][15]);
        expect(delta > 0.0, "no measured cancellation at the largest X");
        std::printf("  delta at X=2^20: %.4f over %s terms\n", delta, rows[0][13].c_str());
    }

    expect(run_cmd(klab_bin() + " " + cfg) == 0, "scan rerun failed");
    std::string second;
    read_file("acceptance_scan_c9.csv", second);
    expect(first == second, "rerun not byte-identical");

    std::string golden_path = golden_dir() + "/scan_3p13.csv";
    std::string golden;
    if (read_file(golden_path, golden)) {
        expect(golden == first, "scan CSV drifted from the pinned golden");
    } else {
        write_file(golden_path, first);
        std::printf("  pinned new golden %s\n", golden_path.c_str());
    }
    std::remove(cfg.c_str());
    std::remove("acceptance_scan_c9.csv");
}

// ---------------------------------------------------------------------------
// 10. Worker counts 1, 2, 8 give bit-identical results for criteria 7 and 9.
// ---------------------------------------------------------------------------
void criterion10() {
    PrimePower pp(3, 7);
    WeightSeq A = WeightSeq::rademacher(7);
    WeightSeq B = WeightSeq::rademacher(8);
    HarnessOptions brute1, brute2, brute8;
    brute1.path = brute2.path = brute8.path = EvalPath::brute_force;
    brute1.workers = 1;
    brute2.workers = 2;
    brute8.workers = 8;
    auto bits = [](double a, double b) {
        return std::memcmp(&a, &b, sizeof(double)) == 0;
    };
    struct Named {
        const char* name;
        std::function<SumReport(const HarnessOptions&)> run;
    } ops[] = {
        {"consecutive", [&](const HarnessOptions& o) { return consecutive_sum(400, 1, pp, o); }},
        {"bilinear", [&](const HarnessOptions& o) { return bilinear_sum(A, B, 24, 24, 1, pp, o); }},
        {"hyperbolic", [&](const HarnessOptions& o) { return hyperbolic_sum(A, B, 2, 2, 300, 1, pp, o); }},
        {"prime-sum", [&](const HarnessOptions& o) { return prime_sum(1200, 1, pp, o); }},
        {"lambda-sum", [&](const HarnessOptions& o) { return lambda_sum(1200, 1, pp, o); }},
    };
    for (const auto& op : ops) {
        double v1 = op.run(brute1).value;
        double v2 = op.run(brute2).value;
        double v8 = op.run(brute8).value;
        expect(bits(v1, v2) && bits(v1, v8),
               std::string(op.name) + " differs across worker counts");
        // and on the explicit path at larger ranges
        HarnessOptions e1, e2, e8;
        e1.workers = 1;
        e2.workers = 2;
        e8.workers = 8;
        if (std::strcmp(op.name, "prime-sum") == 0) {
            double w1 = prime_sum(300000, 1, pp, e1).value;
            double w2 = prime_sum(300000, 1, pp, e2).value;
            double w8 = prime_sum(300000, 1, pp, e8).value;
            expect(bits(w1, w2) && bits(w1, w8), "explicit prime-sum differs across workers");
        }
    }

    std::string cfg = scan_config_path("c10");
    std::string ref;
    expect(run_cmd(klab_bin() + " " + cfg + " --workers 1") == 0, "workers=1 run failed");
    read_file("acceptance_scan_c10.csv", ref);
    for (const char* w : {"2", "8"}) {
        expect(run_cmd(klab_bin() + " " + cfg + " --workers " + w) == 0, "scan run failed");
        std::string got;
        read_file("acceptance_scan_c10.csv", got);
        expect(got == ref, std::string("scan CSV differs at workers=") + w);
    }
    std::remove(cfg.c_str());
    std::remove("acceptance_scan_c10.csv");
    std::printf("  5 operations x {1,2,8} workers bitwise equal; scan CSV byte-equal\n");
}

struct Criterion {
    int id;
    const char* title;
    void (*fn)();
};

const Criterion kCriteria[] = {
    {1, "explicit-formula oracle equivalence (q <= 1e5)", criterion1},
    {2, "vanishing at p | n", criterion2},
    {3, "root-choice invariance", criterion3},
    {4, "p-adic expansion law and Hensel lifts", criterion4},
    {5, "exact Vaughan reconstruction and component oracles", criterion5},
    {6, "bilinear decomposition inequality", criterion6},
    {7, "harness sums vs brute-force oracle", criterion7},
    {8, "prime_sum performance at q = 5^13", criterion8},
    {9, "scan cancellation report and golden bytes", criterion9},
    {10, "determinism under parallelism", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = (argc > 1) ? std::atoi(argv[1]) : 0;
    int failed = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        g_checks_failed = 0;
        auto start = std::chrono::steady_clock::now();
        c.fn();
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        bool ok = (g_checks_failed == 0);
        if (!ok) ++failed;
        std::printf("%s criterion %d: %s (%.0f ms)\n", ok ? "PASS" : "FAIL", c.id,
                    c.title, ms);
    }
    return failed == 0 ? 0 : 1;
}
