#include "klab/runner.hpp"

#include <cmath>
#include <cstdlib>

#include "klab/padic.hpp"
#include "klab/version.hpp"

namespace klab {

namespace {

// The s the step-choice recipe would pick for a range of this size, taking
// the exponent-ratio parameter from the run itself (eta = log range / log q,
// capped at 1).
std::optional<unsigned> default_s(std::uint64_t range, const PrimePower& pp) {
    if (range < 2) return std::nullopt;
    double eta = std::min(1.0, std::log(static_cast<double>(range)) /
                                   std::log(static_cast<double>(pp.q)));
    if (!(eta > 0.0)) return std::nullopt;
    return choose_s(range, pp, eta);
}

ResultRow base_row(const RunConfig& cfg, const PrimePower& pp) {
    ResultRow row;
    row.p = pp.p;
    row.k = pp.k;
    row.q = pp.q;
    row.a = cfg.a;
    row.version = kVersion;
    if (cfg.weights_a.kind == "rademacher") row.seed = cfg.weights_a.seed;
    return row;
}

void fill_report(ResultRow& row, const SumReport& rep, bool record_timings) {
    row.value = rep.value;
    row.n_terms = rep.n_terms;
    row.trivial_bound = rep.trivial_bound;
    row.delta = rep.delta;
    row.wall_ms = record_timings ? rep.wall_ms : 0.0;
}

void emit(std::vector<ResultRow>& rows, const RowSink& sink, ResultRow row) {
    if (sink) sink(row);
    rows.push_back(std::move(row));
}

// One harness computation at the given range settings; shared by the plain
// modes and by scan points.
void run_one(const std::string& mode, const RunConfig& cfg, const PrimePower& pp,
             const HarnessOptions& opt, std::uint64_t range,
             std::vector<ResultRow>& rows, const RowSink& sink) {
    ResultRow row = base_row(cfg, pp);
    row.mode = mode;
    row.s = cfg.s_override ? cfg.s_override : default_s(range, pp);

    if (mode == "consecutive") {
        row.N = range;
        fill_report(row, consecutive_sum(range, cfg.a, pp, opt), cfg.record_timings);
        emit(rows, sink, std::move(row));
    } else if (mode == "bilinear") {
        row.M = *cfg.M;
        row.N = range;
        SumReport rep = bilinear_sum(make_weight_seq(cfg.weights_a),
                                     make_weight_seq(cfg.weights_b), *cfg.M, range,
                                     cfg.a, pp, opt);
        fill_report(row, rep, cfg.record_timings);
        emit(rows, sink, std::move(row));
    } else if (mode == "hyperbolic") {
        row.U = *cfg.U;
        row.V = *cfg.V;
        row.X = range;
        SumReport rep = hyperbolic_sum(make_weight_seq(cfg.weights_a),
                                       make_weight_seq(cfg.weights_b), *cfg.U, *cfg.V,
                                       range, cfg.a, pp, opt);
        fill_report(row, rep, cfg.record_timings);
        emit(rows, sink, std::move(row));
    } else if (mode == "prime-sum") {
        row.X = range;
        fill_report(row, prime_sum(range, cfg.a, pp, opt), cfg.record_timings);
        emit(rows, sink, std::move(row));
    } else if (mode == "lambda-sum") {
        row.X = range;
        fill_report(row, lambda_sum(range, cfg.a, pp, opt), cfg.record_timings);
        emit(rows, sink, std::move(row));
    } else if (mode == "vaughan") {
        VaughanSplit split = vaughan_split(range, *cfg.U, *cfg.V, cfg.a, pp, opt);
        const double comps[4] = {split.sigma1, split.sigma2, split.sigma3, split.sigma4};
        for (int i = 0; i < 4; ++i) {
            ResultRow r = row;
            r.mode = "vaughan-sigma" + std::to_string(i + 1);
            r.X = range;
            r.U = *cfg.U;
            r.V = *cfg.V;
            r.value = comps[i];
            r.n_terms = range;
            emit(rows, sink, std::move(r));
        }
    } else {
        throw ValidationError("runner: unsupported mode '" + mode + "'");
    }
}

}  // namespace

unsigned resolve_workers(const RunConfig& cfg) {
    if (cfg.workers != 0) return cfg.workers;
    if (const char* env = std::getenv("KLAB_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

std::vector<ResultRow> run(const RunConfig& cfg, const RowSink& sink) {
    validate_config(cfg);
    std::vector<ResultRow> rows;

    HarnessOptions opt;
    opt.workers = resolve_workers(cfg);
    opt.work_cap = cfg.work_cap;
    opt.brute_force_cap = cfg.brute_force_cap;

    if (cfg.mode == "eval") {
        std::uint64_t q = cfg.q ? *cfg.q : PrimePower(*cfg.p, *cfg.k).q;
        ResultRow row;
        row.mode = "eval";
        row.q = q;
        if (auto pp = detect_odd_prime_power(q)) {
            row.p = pp->p;
            row.k = pp->k;
        }
        row.a = static_cast<std::int64_t>(reduce(*cfg.n, q));
        row.M = reduce(*cfg.m, q);
        row.N = reduce(*cfg.n, q);
        row.version = kVersion;
        row.value = kloosterman(*cfg.m, *cfg.n, q, cfg.brute_force_cap);
        row.n_terms = 1;
        row.trivial_bound = 2.0;
        row.delta = cancellation_exponent(row.value, row.trivial_bound, q);
        emit(rows, sink, std::move(row));
        return rows;
    }

    PrimePower pp(*cfg.p, *cfg.k);

    if (cfg.mode == "scan") {
        // Geometric grid X_i = ceil(X / 2^i) down to scan_min; N is the
        // varied parameter for modes without an X range.
        const bool varies_N = (cfg.scan_of == "consecutive" || cfg.scan_of == "bilinear");
        std::uint64_t top = varies_N ? *cfg.N : *cfg.X;
        for (unsigned i = 0;; ++i) {
            std::uint64_t shift = std::uint64_t{1} << i;
            std::uint64_t range = (top + shift - 1) / shift;
            if (range < cfg.scan_min) break;
            run_one(cfg.scan_of, cfg, pp, opt, range, rows, sink);
            if (range == 1 || i >= 62) break;
        }
        return rows;
    }

    std::uint64_t range = 0;
    if (cfg.mode == "consecutive" || cfg.mode == "bilinear") {
        range = *cfg.N;
    } else {
        range = *cfg.X;
    }
    run_one(cfg.mode, cfg, pp, opt, range, rows, sink);
    return rows;
}

}  // namespace klab
