#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klab/errors.hpp"

namespace klab {

// One CSV row per completed computation. Optional fields print empty.
struct ResultRow {
    std::string mode;
    std::optional<std::uint64_t> p;
    std::optional<unsigned> k;
    std::uint64_t q = 0;
    std::int64_t a = 0;
    std::optional<std::uint64_t> X, M, N, U, V;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> s;
    double value = 0.0;
    std::uint64_t n_terms = 0;
    double trivial_bound = 0.0;
    double delta = 0.0;
    double wall_ms = 0.0;
    std::string version;
};

// Fixed column order; reals at 17 significant digits so doubles round-trip.
std::string csv_header();
std::string format_csv_row(const ResultRow& row);

// Header plus one line per row. Empty path or "-" writes to stdout.
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace klab
