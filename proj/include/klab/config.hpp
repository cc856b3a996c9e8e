#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klab/errors.hpp"
#include "klab/harness.hpp"

namespace klab {

struct WeightSpec {
    std::string kind = "constant_one";  // constant_one | rademacher | moebius | custom
    std::uint64_t seed = 0;
    std::vector<double> values;         // custom kind only
};

// A batch run description. Parsed from a JSON document; every field can also
// be overridden from the command line before validation.
struct RunConfig {
    std::string mode;  // eval | consecutive | bilinear | hyperbolic |
                       // prime-sum | lambda-sum | vaughan | scan
    std::optional<std::uint64_t> p;
    std::optional<unsigned> k;
    std::int64_t a = 1;
    std::optional<std::int64_t> m, n;   // eval mode
    std::optional<std::uint64_t> q;     // eval mode (alternative to p, k)
    std::optional<std::uint64_t> X, M, N, U, V;
    WeightSpec weights_a, weights_b;
    std::optional<unsigned> s_override;
    unsigned workers = 0;               // 0 = resolve from KLAB_WORKERS, else 1
    std::string out;                    // empty = stdout
    std::uint64_t brute_force_cap = kDefaultBruteForceCap;
    std::uint64_t work_cap = kDefaultWorkCap;
    std::string scan_of = "prime-sum";  // underlying mode for scan
    std::uint64_t scan_min = 1024;      // smallest grid point
    bool record_timings = false;        // real wall_ms in CSV (breaks byte-identity)
};

// Parses and validates a JSON config document. Unknown keys are rejected.
RunConfig parse_config(const std::string& text);

// Re-checks every mode-specific invariant; throws ValidationError naming the
// violated one. Called by parse_config and again after flag overrides.
void validate_config(const RunConfig& cfg);

WeightSeq make_weight_seq(const WeightSpec& spec);

}  // namespace klab
