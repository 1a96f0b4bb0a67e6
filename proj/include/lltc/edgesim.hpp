#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "lltc/baselines.hpp"
#include "lltc/classifier.hpp"
#include "lltc/core.hpp"
#include "lltc/datagen.hpp"

// The closed loop: UE source -> edge node (noise filter + selection) ->
// byte-metered channel -> cloud node (retrain, push model back). Time is
// modeled in rounds. One experiment run is sequential and deterministic
// given its seed.

namespace lltc::edgesim {

struct ChannelConfig {
    bool count_model_push = false;
    std::int64_t header_bytes = 64;  // per message, both directions

    void validate() const;
};

struct LedgerRow {
    int round = 0;
    std::int64_t bytes_up = 0;
    std::int64_t bytes_down = 0;
    std::int64_t items_offloaded = 0;
    std::int64_t items_collected = 0;
    std::int64_t items_discarded_noise = 0;
};

struct TrafficLedger {
    std::vector<LedgerRow> rows;

    std::int64_t total_bytes_up() const;
    std::int64_t total_bytes_down() const;
    std::int64_t total_offloaded() const;
    std::int64_t total_discarded() const;
};

struct RoundReport {
    int round = 0;
    std::string strategy;
    int k_requested = 0;
    std::int64_t batch_size = 0;
    bool shortfall = false;
    std::int64_t train_size = 0;
    double cloud_accuracy = 0.0;
    // Fraction of this round's admitted batch whose label matches ground
    // truth; items without ground truth count as wrong. NaN when no batch.
    double autolabel_accuracy = 0.0;
    // Same labeling rule applied to the whole edge pool before selection.
    double pool_autolabel_accuracy = 0.0;
    LedgerRow ledger;
    std::int64_t cum_bytes_up = 0;
    std::int64_t cum_bytes_down = 0;
    std::int64_t cum_items_offloaded = 0;
};

struct SimConfig {
    baselines::Strategy strategy;
    classifier::TrainConfig train;
    ChannelConfig channel;
    double noise_detect_rate = 1.0;
    std::int64_t collect_per_round = 0;  // 0 = collect everything in round 1
    std::vector<int> schedule;           // k per selection round
    std::uint64_t seed = 1;

    void validate() const;
};

// Drops each noise-flagged sample with probability detect_rate; clean samples
// always pass. Returns (kept, discarded).
std::pair<std::vector<Sample>, std::vector<Sample>> noise_filter(std::span<const Sample> incoming,
                                                                 double detect_rate,
                                                                 std::uint64_t seed);

// Fraction of test samples whose fused prediction matches the true label.
double accuracy(const classifier::ModelSnapshot& model, const LabeledSet& test);

class Simulation {
  public:
    // Bootstrap: trains on the initial labeled set and pushes the model;
    // recorded as round 0.
    Simulation(const datagen::Dataset& data, const SimConfig& cfg);

    bool exhausted() const { return queue_pos_ >= queue_.size() && edge_pool_.empty(); }

    // One collect/filter/select/offload/retrain/push/evaluate cycle.
    // Throws Err::pool_exhausted if there is nothing left to do.
    RoundReport run_round(int k);

    const std::vector<RoundReport>& reports() const { return reports_; }
    const TrafficLedger& ledger() const { return ledger_; }
    const classifier::ModelSnapshot& model() const { return model_; }
    const LabeledSet& training_set() const { return cloud_train_; }
    std::int64_t cloud_received_bytes() const { return cloud_received_bytes_; }

    // items_offloaded + items_discarded + pool + never-collected must equal
    // the initial pool size; checked after every round.
    void check_conservation() const;

  private:
    RoundReport bootstrap();
    void offload_and_train(const std::vector<Sample>& items, const std::vector<int>& labels,
                           RoundReport& report);

    SimConfig cfg_;
    int classes_;
    LabeledSet test_;
    LabeledSet cloud_train_;
    std::vector<Sample> queue_;  // UE stream, not yet collected
    std::size_t queue_pos_ = 0;
    std::vector<Sample> edge_pool_;
    classifier::ModelSnapshot model_;
    TrafficLedger ledger_;
    std::vector<RoundReport> reports_;
    std::unordered_set<std::int64_t> train_ids_;
    std::int64_t cloud_received_bytes_ = 0;
    std::int64_t cloud_received_items_ = 0;
    std::int64_t initial_pool_ = 0;
    int round_ = 0;
    double tau_ = 0.0;
};

// Bootstrap plus one round per schedule entry; stops early when the pool is
// exhausted. Reports include round 0.
std::vector<RoundReport> run_experiment(const datagen::Dataset& data, const SimConfig& cfg);

}  // namespace lltc::edgesim
