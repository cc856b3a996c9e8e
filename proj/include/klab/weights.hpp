#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "klab/errors.hpp"

namespace klab {

// splitmix64 of (seed, index), mapped to {+1, -1}. Pure function: the same
// (seed, i) always yields the same sign.
double rademacher_weight(std::uint64_t seed, std::uint64_t i);

// A bounded weight sequence: every generated weight w satisfies |w| <= 1.
// Generation recipes are deterministic functions of (kind, seed, index).
class WeightSeq {
  public:
    enum class Kind { constant_one, rademacher, moebius, custom };

    static WeightSeq ones();
    static WeightSeq rademacher(std::uint64_t seed);
    static WeightSeq moebius();
    // Values for indices first_index, first_index+1, ...; each |v| <= 1.
    static WeightSeq custom(std::vector<double> values, std::uint64_t first_index = 1);

    // Weights for indices lo..hi inclusive (result[i - lo] = w(i)).
    std::vector<double> materialize(std::uint64_t lo, std::uint64_t hi) const;

    Kind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }
    std::string kind_name() const;

  private:
    WeightSeq(Kind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}

    Kind kind_;
    std::uint64_t seed_ = 0;
    std::vector<double> values_;
    std::uint64_t first_index_ = 1;
};

}  // namespace klab
