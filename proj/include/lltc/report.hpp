#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lltc/edgesim.hpp"

// Report emission. All outputs are deterministic functions of the run
// results: shortest round-trip decimals, fixed column order, LF endings.
// Column orders are documented in docs/formats.md.

namespace lltc::report {

struct RunRecord {
    std::string strategy;  // arm name from the config
    std::uint64_t seed = 0;
    std::vector<edgesim::RoundReport> rounds;
};

// One row per round (round 0 is the bootstrap).
std::string rounds_to_csv(const RunRecord& run);

// Final/summary metrics for one run.
std::string summary_to_json(const RunRecord& run);

// All runs concatenated, keyed by (strategy, seed, round).
std::string comparison_to_csv(std::span<const RunRecord> runs);

struct ComparisonRow {
    std::string strategy;
    std::uint64_t seed = 0;
    edgesim::RoundReport round;
};

std::vector<ComparisonRow> parse_comparison_csv(const std::string& text,
                                                const std::string& origin);

// Accuracy-vs-traffic curves: per (strategy, round), seed-averaged cumulative
// bytes against mean/std accuracy. The pool table uses cumulative items
// offloaded as the x axis instead.
struct CurveTables {
    std::string bytes_csv;
    std::string pool_csv;
};

CurveTables curves_from_comparison(std::span<const ComparisonRow> rows);

}  // namespace lltc::report
