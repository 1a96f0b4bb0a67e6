#pragma once

#include <optional>

#include "lltc/config.hpp"
#include "lltc/report.hpp"

namespace lltc::runner {

// Executes every (strategy, seed) arm of the config. Runs are independent
// (fresh dataset and RNG streams per run), so jobs > 1 fans them out over a
// thread pool; results come back in deterministic (strategy, seed) order
// regardless. seed_override replaces the config's seed list with one seed.
std::vector<report::RunRecord> run_all(const config::FileConfig& cfg, int jobs,
                                       std::optional<std::uint64_t> seed_override);

}  // namespace lltc::runner
