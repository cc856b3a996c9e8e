#include "klab/config.hpp"

#include <set>

#include <json.hpp>

#include "klab/modular.hpp"

namespace klab {

namespace {

using nlohmann::json;

const std::set<std::string> kModes = {"eval",      "consecutive", "bilinear",
                                      "hyperbolic", "prime-sum",  "lambda-sum",
                                      "vaughan",    "scan"};

std::uint64_t get_u64(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ParseError("config: field '" + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::int64_t get_i64(const json& j, const std::string& key) {
    if (!j.at(key).is_number_integer() && !j.at(key).is_number_unsigned()) {
        throw ParseError("config: field '" + key + "' must be an integer");
    }
    return j.at(key).get<std::int64_t>();
}

WeightSpec parse_weights(const json& j, const std::string& field) {
    static const std::set<std::string> known = {"kind", "seed", "values"};
    if (!j.is_object()) {
        throw ParseError("config: '" + field + "' must be an object");
    }
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            throw ParseError("config: unknown key '" + item.key() + "' in '" + field + "'");
        }
    }
    WeightSpec w;
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) throw ParseError("config: weight kind must be a string");
        w.kind = j.at("kind").get<std::string>();
    }
    if (j.contains("seed")) w.seed = get_u64(j, "seed");
    if (j.contains("values")) {
        if (!j.at("values").is_array()) throw ParseError("config: weight values must be an array");
        for (const auto& v : j.at("values")) {
            if (!v.is_number()) throw ParseError("config: weight values must be numbers");
            w.values.push_back(v.get<double>());
        }
    }
    return w;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config: root must be a JSON object");

    static const std::set<std::string> known = {
        "mode", "p", "k", "a", "m", "n", "q", "X", "M", "N", "U", "V",
        "weights_a", "weights_b", "s_override", "workers", "out",
        "brute_force_cap", "work_cap", "scan_of", "scan_min", "record_timings",
        "seed"};
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            throw ParseError("config: unknown key '" + item.key() + "'");
        }
    }

    RunConfig cfg;
    if (!j.contains("mode")) throw ValidationError("config: 'mode' is required");
    if (!j.at("mode").is_string()) throw ParseError("config: 'mode' must be a string");
    cfg.mode = j.at("mode").get<std::string>();

    if (j.contains("p")) cfg.p = get_u64(j, "p");
    if (j.contains("k")) cfg.k = static_cast<unsigned>(get_u64(j, "k"));
    if (j.contains("a")) cfg.a = get_i64(j, "a");
    if (j.contains("m")) cfg.m = get_i64(j, "m");
    if (j.contains("n")) cfg.n = get_i64(j, "n");
    if (j.contains("q")) cfg.q = get_u64(j, "q");
    if (j.contains("X")) cfg.X = get_u64(j, "X");
    if (j.contains("M")) cfg.M = get_u64(j, "M");
    if (j.contains("N")) cfg.N = get_u64(j, "N");
    if (j.contains("U")) cfg.U = get_u64(j, "U");
    if (j.contains("V")) cfg.V = get_u64(j, "V");
    if (j.contains("weights_a")) cfg.weights_a = parse_weights(j.at("weights_a"), "weights_a");
    if (j.contains("weights_b")) cfg.weights_b = parse_weights(j.at("weights_b"), "weights_b");
    if (j.contains("s_override")) cfg.s_override = static_cast<unsigned>(get_u64(j, "s_override"));
    if (j.contains("workers")) cfg.workers = static_cast<unsigned>(get_u64(j, "workers"));
    if (j.contains("out")) {
        if (!j.at("out").is_string()) throw ParseError("config: 'out' must be a string");
        cfg.out = j.at("out").get<std::string>();
    }
    if (j.contains("brute_force_cap")) cfg.brute_force_cap = get_u64(j, "brute_force_cap");
    if (j.contains("work_cap")) cfg.work_cap = get_u64(j, "work_cap");
    if (j.contains("scan_of")) {
        if (!j.at("scan_of").is_string()) throw ParseError("config: 'scan_of' must be a string");
        cfg.scan_of = j.at("scan_of").get<std::string>();
    }
    if (j.contains("scan_min")) cfg.scan_min = get_u64(j, "scan_min");
    if (j.contains("record_timings")) {
        if (!j.at("record_timings").is_boolean()) {
            throw ParseError("config: 'record_timings' must be a boolean");
        }
        cfg.record_timings = j.at("record_timings").get<bool>();
    }
    if (j.contains("seed")) {
        std::uint64_t seed = get_u64(j, "seed");
        cfg.weights_a.seed = seed;
        cfg.weights_b.seed = seed;
    }

    validate_config(cfg);
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (!kModes.count(cfg.mode)) {
        throw ValidationError("mode must be one of eval|consecutive|bilinear|hyperbolic|"
                              "prime-sum|lambda-sum|vaughan|scan");
    }
    const std::string& effective =
        (cfg.mode == "scan") ? cfg.scan_of : cfg.mode;
    if (cfg.mode == "scan") {
        if (!kModes.count(effective) || effective == "scan" || effective == "eval") {
            throw ValidationError("scan_of must name a harness mode");
        }
        if (cfg.scan_min < 1) throw ValidationError("scan_min must be >= 1");
    }

    for (const WeightSpec* w : {&cfg.weights_a, &cfg.weights_b}) {
        if (w->kind != "constant_one" && w->kind != "rademacher" &&
            w->kind != "moebius" && w->kind != "custom") {
            throw ValidationError("weight kind must be constant_one|rademacher|moebius|custom");
        }
    }

    if (cfg.mode == "eval") {
        if (!cfg.m || !cfg.n) throw ValidationError("eval mode requires m and n");
        if (!cfg.q && !(cfg.p && cfg.k)) {
            throw ValidationError("eval mode requires q or (p, k)");
        }
        if (cfg.q && *cfg.q < 2) throw ValidationError("q must be >= 2");
        return;
    }

    // Harness modes all run on an explicit-path modulus.
    if (!cfg.p || !cfg.k) throw ValidationError(effective + " mode requires p and k");
    if (*cfg.p < 3 || (*cfg.p & 1) == 0 || !is_prime(*cfg.p)) {
        throw ValidationError("p must be an odd prime");
    }
    if (*cfg.k < 2) throw ValidationError("k must be >= 2 for explicit-path modes");
    PrimePower pp(*cfg.p, *cfg.k);  // rejects overflowing p^k
    if (reduce(cfg.a, pp.q) % pp.p == 0) throw ValidationError("gcd(a, p) must be 1");

    auto require = [&](const std::optional<std::uint64_t>& field, const char* name) {
        if (!field) {
            throw ValidationError(effective + " mode requires " + std::string(name));
        }
    };
    if (effective == "consecutive") {
        require(cfg.N, "N");
    } else if (effective == "bilinear") {
        require(cfg.M, "M");
        require(cfg.N, "N");
    } else if (effective == "hyperbolic") {
        require(cfg.U, "U");
        require(cfg.V, "V");
        require(cfg.X, "X");
    } else if (effective == "prime-sum" || effective == "lambda-sum") {
        require(cfg.X, "X");
    } else if (effective == "vaughan") {
        require(cfg.X, "X");
        require(cfg.U, "U");
        require(cfg.V, "V");
        if (*cfg.U < 2 || *cfg.V < 2 || *cfg.U > *cfg.X || *cfg.V > *cfg.X) {
            throw ValidationError("vaughan mode requires 1 < U, V <= X");
        }
    }
    if (cfg.s_override && (*cfg.s_override < 1 || *cfg.s_override > *cfg.k)) {
        throw ValidationError("s_override must satisfy 1 <= s <= k");
    }
}

WeightSeq make_weight_seq(const WeightSpec& spec) {
    if (spec.kind == "constant_one") return WeightSeq::ones();
    if (spec.kind == "rademacher") return WeightSeq::rademacher(spec.seed);
    if (spec.kind == "moebius") return WeightSeq::moebius();
    if (spec.kind == "custom") return WeightSeq::custom(spec.values);
    throw ValidationError("unknown weight kind '" + spec.kind + "'");
}

}  // namespace klab
