#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lltc/classifier.hpp"
#include "lltc/core.hpp"

// Comparison strategies: single-view-style self-training on the fused
// distribution, two-view co-training, uniform random selection, and the
// offload-everything control handled by the simulator.

namespace lltc::baselines {

enum class StrategyKind { lltc, self_training, co_training, random, offload_all };

const char* strategy_kind_name(StrategyKind k);
std::optional<StrategyKind> strategy_kind_from_name(const std::string& name);

struct StrategyParams {
    bool balanced = true;              // lltc: use per-class quotas
    std::optional<double> tau;         // lltc: absolute threshold override
    std::optional<double> tau_fraction;  // lltc: tau = fraction * ln c

    void validate(StrategyKind kind) const;
};

struct Strategy {
    StrategyKind kind = StrategyKind::lltc;
    StrategyParams params;
};

// Averages the two modality distributions into one, labels by its argmax and
// ranks by its entropy. No threshold, no balancing, no cross-modal check.
SelectionBatch self_training_select(const classifier::ModelSnapshot& model,
                                    const UnlabeledSet& pool, int k);

// View f picks its k/2 most confident samples labeled by f, then view s picks
// k/2 disjoint ones labeled by s. Odd k rounds down.
SelectionBatch co_training_select(const classifier::ModelSnapshot& model, const UnlabeledSet& pool,
                                  int k);

// Uniform draw without replacement, labeled by the fused argmax.
SelectionBatch random_select(const classifier::ModelSnapshot& model, const UnlabeledSet& pool,
                             int k, std::uint64_t seed);

}  // namespace lltc::baselines
