// klab: batch front end for the Kloosterman-sum experiment harness.
// Reads a JSON run configuration, executes it, and writes a CSV of results.
// Exit codes: 0 success, 2 validation, 3 work/modulus cap, 4 I/O.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "klab/runner.hpp"
#include "klab/version.hpp"

namespace {

struct Overrides {
    std::string mode, out, scan_of;
    std::optional<std::uint64_t> p, q, X, M, N, U, V, seed, scan_min;
    std::optional<unsigned> k, s_override, workers;
    std::optional<std::int64_t> a, m, n;
    bool record_timings = false;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw klab::IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void apply_overrides(klab::RunConfig& cfg, const Overrides& ov) {
    if (!ov.mode.empty()) cfg.mode = ov.mode;
    if (!ov.out.empty()) cfg.out = ov.out;
    if (!ov.scan_of.empty()) cfg.scan_of = ov.scan_of;
    if (ov.p) cfg.p = ov.p;
    if (ov.k) cfg.k = ov.k;
    if (ov.a) cfg.a = *ov.a;
    if (ov.m) cfg.m = ov.m;
    if (ov.n) cfg.n = ov.n;
    if (ov.q) cfg.q = ov.q;
    if (ov.X) cfg.X = ov.X;
    if (ov.M) cfg.M = ov.M;
    if (ov.N) cfg.N = ov.N;
    if (ov.U) cfg.U = ov.U;
    if (ov.V) cfg.V = ov.V;
    if (ov.seed) {
        cfg.weights_a.seed = *ov.seed;
        cfg.weights_b.seed = *ov.seed;
    }
    if (ov.s_override) cfg.s_override = ov.s_override;
    if (ov.workers) cfg.workers = *ov.workers;
    if (ov.scan_min) cfg.scan_min = *ov.scan_min;
    if (ov.record_timings) cfg.record_timings = true;
}

int fail(const char* category, const std::string& what, int code) {
    std::fprintf(stderr, "error: %s: %s\n", category, what.c_str());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"klab: exact Kloosterman sums mod odd prime powers and "
                 "cancellation experiments"};
    app.set_version_flag("--version", klab::kVersion);

    std::string config_path;
    Overrides ov;
    app.add_option("config", config_path, "JSON run configuration");
    app.add_option("--mode", ov.mode, "computation mode");
    app.add_option("--p", ov.p, "odd prime p");
    app.add_option("--k", ov.k, "exponent k (q = p^k)");
    app.add_option("--a", ov.a, "Kloosterman argument a");
    app.add_option("--m", ov.m, "eval mode: first argument");
    app.add_option("--n", ov.n, "eval mode: second argument");
    app.add_option("--q", ov.q, "eval mode: modulus");
    app.add_option("--X", ov.X, "range limit X");
    app.add_option("--M", ov.M, "bilinear range M");
    app.add_option("--N", ov.N, "range N");
    app.add_option("--U", ov.U, "cutoff U");
    app.add_option("--V", ov.V, "cutoff V");
    app.add_option("--seed", ov.seed, "weight seed (both sequences)");
    app.add_option("--workers", ov.workers, "worker count");
    app.add_option("--out", ov.out, "output CSV path (default stdout)");
    app.add_option("--s-override", ov.s_override, "report this s instead of the recipe value");
    app.add_option("--scan-of", ov.scan_of, "mode a scan runs (default prime-sum)");
    app.add_option("--scan-min", ov.scan_min, "smallest scan grid point");
    app.add_flag("--record-timings", ov.record_timings,
                 "write real wall_ms into the CSV (breaks rerun byte-identity)");

    CLI11_PARSE(app, argc, argv);

    std::vector<klab::ResultRow> rows;
    std::string out_path;
    try {
        klab::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = klab::parse_config(read_file(config_path));
        } else if (!ov.mode.empty()) {
            cfg.mode = ov.mode;
        } else {
            return fail("validation", "no config file and no --mode given", 2);
        }
        apply_overrides(cfg, ov);
        klab::validate_config(cfg);
        out_path = cfg.out;

        try {
            klab::run(cfg, [&](const klab::ResultRow& row) {
                std::fprintf(stderr, "klab: %s q=%llu value=%.6g n_terms=%llu delta=%.4f\n",
                             row.mode.c_str(),
                             static_cast<unsigned long long>(row.q), row.value,
                             static_cast<unsigned long long>(row.n_terms), row.delta);
                rows.push_back(row);
            });
        } catch (...) {
            // Flush whatever completed before the failure, then rethrow.
            if (!rows.empty()) klab::write_csv(rows, out_path);
            throw;
        }
        klab::write_csv(rows, out_path);
        return 0;
    } catch (const klab::ParseError& e) {
        return fail("parse", e.what(), 2);
    } catch (const klab::ValidationError& e) {
        return fail("validation", e.what(), 2);
    } catch (const klab::BadArgument& e) {
        return fail("validation", e.what(), 2);
    } catch (const klab::WorkCapExceeded& e) {
        return fail("work-cap", e.what(), 3);
    } catch (const klab::ModulusTooLarge& e) {
        return fail("work-cap", e.what(), 3);
    } catch (const klab::LimitTooLarge& e) {
        return fail("work-cap", e.what(), 3);
    } catch (const klab::IoError& e) {
        return fail("io", e.what(), 4);
    } catch (const klab::Error& e) {
        return fail("validation", e.what(), 2);
    }
}
