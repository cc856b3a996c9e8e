#include "klab/weights.hpp"

#include <cmath>

#include "klab/sieve.hpp"

namespace klab {

double rademacher_weight(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + i * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return (z >> 63) ? -1.0 : 1.0;
}

WeightSeq WeightSeq::ones() { return WeightSeq(Kind::constant_one, 0); }

WeightSeq WeightSeq::rademacher(std::uint64_t seed) {
    return WeightSeq(Kind::rademacher, seed);
}

WeightSeq WeightSeq::moebius() { return WeightSeq(Kind::moebius, 0); }

WeightSeq WeightSeq::custom(std::vector<double> values, std::uint64_t first_index) {
    for (double v : values) {
        if (!(std::abs(v) <= 1.0)) {
            throw BadArgument("WeightSeq::custom: weights must satisfy |w| <= 1");
        }
    }
    WeightSeq w(Kind::custom, 0);
    w.values_ = std::move(values);
    w.first_index_ = first_index;
    return w;
}

std::vector<double> WeightSeq::materialize(std::uint64_t lo, std::uint64_t hi) const {
    if (lo < 1 || hi < lo) throw BadArgument("WeightSeq: bad index range");
    std::vector<double> out(hi - lo + 1);
    switch (kind_) {
        case Kind::constant_one:
            for (auto& v : out) v = 1.0;
            break;
        case Kind::rademacher:
            for (std::uint64_t i = lo; i <= hi; ++i) {
                out[i - lo] = rademacher_weight(seed_, i);
            }
            break;
        case Kind::moebius: {
            SieveTables tables(hi);
            for (std::uint64_t i = lo; i <= hi; ++i) {
                out[i - lo] = static_cast<double>(tables.mu(i));
            }
            break;
        }
        case Kind::custom:
            for (std::uint64_t i = lo; i <= hi; ++i) {
                if (i < first_index_ || i - first_index_ >= values_.size()) {
                    throw BadArgument("WeightSeq::custom: index " + std::to_string(i) +
                                      " outside the provided range");
                }
                out[i - lo] = values_[i - first_index_];
            }
            break;
    }
    return out;
}

std::string WeightSeq::kind_name() const {
    switch (kind_) {
        case Kind::constant_one: return "constant_one";
        case Kind::rademacher: return "rademacher";
        case Kind::moebius: return "moebius";
        case Kind::custom: return "custom";
    }
    return "?";
}

}  // namespace klab
