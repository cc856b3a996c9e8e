#pragma once

#include <functional>
#include <vector>

#include "klab/config.hpp"
#include "klab/csv.hpp"

namespace klab {

using RowSink = std::function<void(const ResultRow&)>;

// Executes the configured computation(s) and returns one row per result.
// When a sink is given it also receives each row as soon as it is complete,
// so partially finished scans can be flushed if a later point fails.
std::vector<ResultRow> run(const RunConfig& cfg, const RowSink& sink = {});

// cfg.workers if nonzero, else KLAB_WORKERS from the environment, else 1.
unsigned resolve_workers(const RunConfig& cfg);

}  // namespace klab
