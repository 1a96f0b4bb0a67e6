#include "lltc/edgesim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "lltc/llselect.hpp"
#include "lltc/rng.hpp"

namespace lltc::edgesim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Substream salts for the per-run RNG tree.
constexpr std::uint64_t kNoiseSalt = 0x6e6f6973;
constexpr std::uint64_t kSelectSalt = 0x73656c65;

}  // namespace

void ChannelConfig::validate() const {
    if (header_bytes < 0 || header_bytes > 1024)
        fail(Err::config_invalid, "channel.header_bytes must be in [0, 1024]");
}

void SimConfig::validate() const {
    channel.validate();
    train.validate();
    strategy.params.validate(strategy.kind);
    if (noise_detect_rate < 0.0 || noise_detect_rate > 1.0)
        fail(Err::config_invalid, "edge.noise_detect_rate must be in [0, 1]");
    if (collect_per_round < 0)
        fail(Err::config_invalid, "schedule.collect_per_round must be >= 0");
    for (int k : schedule)
        if (k < 0) fail(Err::config_invalid, "schedule entries must be >= 0");
}

std::int64_t TrafficLedger::total_bytes_up() const {
    std::int64_t t = 0;
    for (const LedgerRow& r : rows) t += r.bytes_up;
    return t;
}

std::int64_t TrafficLedger::total_bytes_down() const {
    std::int64_t t = 0;
    for (const LedgerRow& r : rows) t += r.bytes_down;
    return t;
}

std::int64_t TrafficLedger::total_offloaded() const {
    std::int64_t t = 0;
    for (const LedgerRow& r : rows) t += r.items_offloaded;
    return t;
}

std::int64_t TrafficLedger::total_discarded() const {
    std::int64_t t = 0;
    for (const LedgerRow& r : rows) t += r.items_discarded_noise;
    return t;
}

std::pair<std::vector<Sample>, std::vector<Sample>> noise_filter(std::span<const Sample> incoming,
                                                                 double detect_rate,
                                                                 std::uint64_t seed) {
    if (detect_rate < 0.0 || detect_rate > 1.0)
        fail(Err::config_invalid, "noise_filter: detect_rate must be in [0, 1]");
    Rng rng(seed);
    std::vector<Sample> kept, discarded;
    kept.reserve(incoming.size());
    for (const Sample& s : incoming) {
        if (s.is_noise && rng.next_bernoulli(detect_rate))
            discarded.push_back(s);
        else
            kept.push_back(s);
    }
    return {std::move(kept), std::move(discarded)};
}

double accuracy(const classifier::ModelSnapshot& model, const LabeledSet& test) {
    if (test.samples.empty()) fail(Err::empty_test_set, "accuracy: empty test set");
    std::int64_t correct = 0;
    for (std::size_t i = 0; i < test.samples.size(); ++i)
        if (classifier::predict_fused(model, test.samples[i]).argmax() == test.labels[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(test.samples.size());
}

Simulation::Simulation(const datagen::Dataset& data, const SimConfig& cfg)
    : cfg_(cfg),
      classes_(data.classes),
      test_(data.test),
      cloud_train_(data.labeled),
      queue_(data.unlabeled.samples) {
    cfg_.validate();
    cloud_train_.validate();
    initial_pool_ = static_cast<std::int64_t>(queue_.size());
    for (const Sample& s : cloud_train_.samples) train_ids_.insert(s.id);

    const baselines::StrategyParams& p = cfg_.strategy.params;
    tau_ = p.tau ? *p.tau
                 : (p.tau_fraction ? *p.tau_fraction * std::log(static_cast<double>(classes_))
                                   : llselect::default_tau(classes_));
    reports_.push_back(bootstrap());
}

RoundReport Simulation::bootstrap() {
    model_ = classifier::train(cloud_train_, cfg_.train, 1);

    RoundReport r;
    r.round = 0;
    r.strategy = baselines::strategy_kind_name(cfg_.strategy.kind);
    r.ledger.round = 0;
    if (cfg_.channel.count_model_push)
        r.ledger.bytes_down = cfg_.channel.header_bytes + model_.size_bytes;
    r.train_size = static_cast<std::int64_t>(cloud_train_.size());
    r.cloud_accuracy = accuracy(model_, test_);
    r.autolabel_accuracy = kNaN;
    r.pool_autolabel_accuracy = kNaN;
    r.cum_bytes_up = 0;
    r.cum_bytes_down = r.ledger.bytes_down;
    r.cum_items_offloaded = 0;
    ledger_.rows.push_back(r.ledger);
    return r;
}

void Simulation::offload_and_train(const std::vector<Sample>& items,
                                   const std::vector<int>& labels, RoundReport& report) {
    // Edge -> cloud message: one header plus the raw items. Nothing to send
    // means no message at all.
    std::int64_t bytes = 0;
    if (!items.empty()) {
        bytes = cfg_.channel.header_bytes;
        for (const Sample& s : items) bytes += s.size_bytes;
    }
    report.ledger.bytes_up = bytes;
    report.ledger.items_offloaded = static_cast<std::int64_t>(items.size());
    cloud_received_bytes_ += bytes;  // the receiving end of the channel
    cloud_received_items_ += static_cast<std::int64_t>(items.size());

    bool appended = false;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (labels[i] < 0) continue;  // offload_all may ship unlabeled noise
        if (!train_ids_.insert(items[i].id).second)
            fail(Err::spec_invalid,
                 "sample id " + std::to_string(items[i].id) + " entered the training set twice");
        cloud_train_.samples.push_back(items[i]);
        cloud_train_.labels.push_back(labels[i]);
        appended = true;
    }

    if (appended) {
        // Cold-start retrain on initial labels plus everything accepted.
        model_ = classifier::train(cloud_train_, cfg_.train, model_.version + 1);
        if (cfg_.channel.count_model_push)
            report.ledger.bytes_down = cfg_.channel.header_bytes + model_.size_bytes;
    }
}

RoundReport Simulation::run_round(int k) {
    if (exhausted()) fail(Err::pool_exhausted, "run_round: pool and queue are empty");
    ++round_;

    RoundReport r;
    r.round = round_;
    r.strategy = baselines::strategy_kind_name(cfg_.strategy.kind);
    r.k_requested = k;
    r.ledger.round = round_;

    // Collect a slice of the UE stream and filter noise at the edge.
    std::size_t want = cfg_.collect_per_round == 0
                           ? queue_.size() - queue_pos_
                           : std::min<std::size_t>(static_cast<std::size_t>(cfg_.collect_per_round),
                                                   queue_.size() - queue_pos_);
    std::span<const Sample> incoming{queue_.data() + queue_pos_, want};
    queue_pos_ += want;
    r.ledger.items_collected = static_cast<std::int64_t>(want);
    auto [kept, discarded] =
        noise_filter(incoming, cfg_.noise_detect_rate, Rng(cfg_.seed).fork(kNoiseSalt).fork(
                                                           static_cast<std::uint64_t>(round_))
                         .next_u64());
    r.ledger.items_discarded_noise = static_cast<std::int64_t>(discarded.size());
    edge_pool_.insert(edge_pool_.end(), kept.begin(), kept.end());

    // Score the pool with the pushed model for the report, then select.
    std::vector<Sample> picked;
    std::vector<int> picked_labels;
    r.pool_autolabel_accuracy = kNaN;
    if (!edge_pool_.empty()) {
        UnlabeledSet pool;
        pool.samples = edge_pool_;

        std::vector<PseudoLabel> scored = llselect::score_pool(model_, pool);
        std::int64_t pool_correct = 0;
        std::unordered_map<std::int64_t, const Sample*> by_id;
        by_id.reserve(edge_pool_.size());
        for (const Sample& s : edge_pool_) by_id.emplace(s.id, &s);
        for (const PseudoLabel& p : scored) {
            const Sample* s = by_id.at(p.sample_id);
            if (s->true_label && *s->true_label == p.label) ++pool_correct;
        }
        r.pool_autolabel_accuracy =
            static_cast<double>(pool_correct) / static_cast<double>(scored.size());

        SelectionBatch batch;
        batch.requested = k;
        const baselines::StrategyKind kind = cfg_.strategy.kind;
        if (kind == baselines::StrategyKind::offload_all) {
            // Everything goes up, raw; the cloud has ground truth for the
            // ceiling reference, noise items ship but cannot be trained on.
            for (const Sample& s : edge_pool_) {
                picked.push_back(s);
                picked_labels.push_back(s.true_label ? *s.true_label : -1);
            }
            batch.requested = static_cast<int>(edge_pool_.size());
            r.k_requested = batch.requested;
            edge_pool_.clear();
            r.batch_size = static_cast<std::int64_t>(picked.size());
            std::int64_t correct = 0;
            for (std::size_t i = 0; i < picked.size(); ++i)
                if (picked_labels[i] >= 0) ++correct;  // true labels are correct by definition
            r.autolabel_accuracy =
                picked.empty() ? kNaN
                               : static_cast<double>(correct) / static_cast<double>(picked.size());
        } else if (k > 0) {
            switch (kind) {
                case baselines::StrategyKind::lltc: {
                    CandidateSet z = llselect::candidate_filter(scored, tau_);
                    if (z.empty()) {
                        batch.entries.clear();
                    } else {
                        batch = cfg_.strategy.params.balanced
                                    ? llselect::select_balanced(z, k, classes_)
                                    : llselect::select_batch(z, k);
                    }
                    break;
                }
                case baselines::StrategyKind::self_training:
                    batch = baselines::self_training_select(model_, pool, k);
                    break;
                case baselines::StrategyKind::co_training:
                    batch = baselines::co_training_select(model_, pool, k);
                    break;
                case baselines::StrategyKind::random:
                    batch = baselines::random_select(
                        model_, pool, k,
                        Rng(cfg_.seed).fork(kSelectSalt).fork(static_cast<std::uint64_t>(round_))
                            .next_u64());
                    break;
                case baselines::StrategyKind::offload_all:
                    break;  // handled above
            }
            batch.iteration = round_;
            batch.requested = k;

            std::unordered_set<std::int64_t> chosen;
            std::int64_t correct = 0;
            for (const PseudoLabel& p : batch.entries) {
                chosen.insert(p.sample_id);
                const Sample* s = by_id.at(p.sample_id);
                picked.push_back(*s);
                picked_labels.push_back(p.label);
                if (s->true_label && *s->true_label == p.label) ++correct;
            }
            std::erase_if(edge_pool_, [&](const Sample& s) { return chosen.contains(s.id); });
            r.batch_size = static_cast<std::int64_t>(batch.entries.size());
            r.autolabel_accuracy =
                batch.entries.empty()
                    ? kNaN
                    : static_cast<double>(correct) / static_cast<double>(batch.entries.size());
        } else {
            r.autolabel_accuracy = kNaN;  // k == 0: nothing selected
        }
        r.shortfall = r.batch_size < static_cast<std::int64_t>(r.k_requested);
    } else {
        r.autolabel_accuracy = kNaN;
        r.shortfall = k > 0;
    }

    offload_and_train(picked, picked_labels, r);

    r.train_size = static_cast<std::int64_t>(cloud_train_.size());
    r.cloud_accuracy = accuracy(model_, test_);

    ledger_.rows.push_back(r.ledger);
    const RoundReport& prev = reports_.back();
    r.cum_bytes_up = prev.cum_bytes_up + r.ledger.bytes_up;
    r.cum_bytes_down = prev.cum_bytes_down + r.ledger.bytes_down;
    r.cum_items_offloaded = prev.cum_items_offloaded + r.ledger.items_offloaded;
    reports_.push_back(r);

    check_conservation();
    return r;
}

void Simulation::check_conservation() const {
    const std::int64_t never_collected = static_cast<std::int64_t>(queue_.size() - queue_pos_);
    const std::int64_t in_pool = static_cast<std::int64_t>(edge_pool_.size());
    const std::int64_t sum =
        ledger_.total_offloaded() + ledger_.total_discarded() + in_pool + never_collected;
    if (sum != initial_pool_)
        fail(Err::spec_invalid, "conservation violated: " + std::to_string(sum) + " != " +
                                    std::to_string(initial_pool_));
    if (cloud_received_bytes_ != ledger_.total_bytes_up())
        fail(Err::spec_invalid, "channel ends disagree: cloud received " +
                                    std::to_string(cloud_received_bytes_) + " bytes, ledger says " +
                                    std::to_string(ledger_.total_bytes_up()));
}

std::vector<RoundReport> run_experiment(const datagen::Dataset& data, const SimConfig& cfg) {
    Simulation sim(data, cfg);
    for (int k : cfg.schedule) {
        if (sim.exhausted()) break;  // natural termination
        sim.run_round(k);
    }
    return sim.reports();
}

}  // namespace lltc::edgesim
