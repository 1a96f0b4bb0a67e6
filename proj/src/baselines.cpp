#include "lltc/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "lltc/llselect.hpp"
#include "lltc/rng.hpp"

namespace lltc::baselines {

const char* strategy_kind_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::lltc: return "lltc";
        case StrategyKind::self_training: return "self_training";
        case StrategyKind::co_training: return "co_training";
        case StrategyKind::random: return "random";
        case StrategyKind::offload_all: return "offload_all";
    }
    return "?";
}

std::optional<StrategyKind> strategy_kind_from_name(const std::string& name) {
    for (StrategyKind k : {StrategyKind::lltc, StrategyKind::self_training,
                           StrategyKind::co_training, StrategyKind::random,
                           StrategyKind::offload_all})
        if (name == strategy_kind_name(k)) return k;
    return std::nullopt;
}

void StrategyParams::validate(StrategyKind kind) const {
    if (kind != StrategyKind::lltc && (tau || tau_fraction))
        fail(Err::config_invalid,
             std::string("tau is only meaningful for lltc, not ") + strategy_kind_name(kind));
    if (tau && *tau < 0.0) fail(Err::config_invalid, "tau must be >= 0");
    if (tau_fraction && (*tau_fraction < 0.0 || *tau_fraction > 1.0))
        fail(Err::config_invalid, "tau_fraction must be in [0, 1]");
    if (tau && tau_fraction) fail(Err::config_invalid, "set tau or tau_fraction, not both");
}

namespace {

struct ScoredSample {
    PseudoLabel pseudo;    // cross-modal fields, invariant-preserving
    double rank_entropy;   // strategy-specific ranking score
};

PseudoLabel fused_pseudo(const classifier::ModelSnapshot& model, const Sample& sample,
                         double* fused_entropy) {
    ClassDistribution d_f = classifier::predict_f(model, sample.feat_f);
    ClassDistribution d_s = classifier::predict_s(model, sample.feat_s);
    ClassDistribution fused = classifier::predict_fused(model, sample);
    if (fused_entropy) *fused_entropy = llselect::entropy(fused).value;
    return make_pseudo_label(sample.id, fused.argmax(), llselect::entropy(d_f),
                             llselect::entropy(d_s), SourceModality::fused);
}

}  // namespace

SelectionBatch self_training_select(const classifier::ModelSnapshot& model,
                                    const UnlabeledSet& pool, int k) {
    if (pool.samples.empty()) fail(Err::empty_pool, "self_training_select: empty pool");
    if (k < 1) fail(Err::spec_invalid, "self_training_select: k must be >= 1");
    std::vector<ScoredSample> scored;
    scored.reserve(pool.samples.size());
    for (const Sample& sample : pool.samples) {
        double fe = 0.0;
        PseudoLabel p = fused_pseudo(model, sample, &fe);
        scored.push_back({p, fe});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredSample& a, const ScoredSample& b) {
        if (a.rank_entropy != b.rank_entropy) return a.rank_entropy < b.rank_entropy;
        return a.pseudo.sample_id < b.pseudo.sample_id;
    });
    SelectionBatch batch;
    batch.requested = k;
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), scored.size());
    for (std::size_t i = 0; i < take; ++i) batch.entries.push_back(scored[i].pseudo);
    return batch;
}

SelectionBatch co_training_select(const classifier::ModelSnapshot& model, const UnlabeledSet& pool,
                                  int k) {
    if (pool.samples.empty()) fail(Err::empty_pool, "co_training_select: empty pool");
    if (k < 1) fail(Err::spec_invalid, "co_training_select: k must be >= 1");
    const int half = (k - k % 2) / 2;

    struct ViewScore {
        const Sample* sample;
        EntropyScore e_f, e_s;
        int arg_f, arg_s;
    };
    std::vector<ViewScore> scored;
    scored.reserve(pool.samples.size());
    for (const Sample& sample : pool.samples) {
        ClassDistribution d_f = classifier::predict_f(model, sample.feat_f);
        ClassDistribution d_s = classifier::predict_s(model, sample.feat_s);
        scored.push_back({&sample, llselect::entropy(d_f), llselect::entropy(d_s), d_f.argmax(),
                          d_s.argmax()});
    }

    SelectionBatch batch;
    batch.requested = k;
    std::vector<bool> taken(scored.size(), false);
    // View f picks first; view s picks from what is left.
    for (bool view_f : {true, false}) {
        std::vector<std::size_t> order(scored.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double ea = view_f ? scored[a].e_f.value : scored[a].e_s.value;
            const double eb = view_f ? scored[b].e_f.value : scored[b].e_s.value;
            if (ea != eb) return ea < eb;
            return scored[a].sample->id < scored[b].sample->id;
        });
        int picked = 0;
        for (std::size_t idx : order) {
            if (picked >= half) break;
            if (taken[idx]) continue;
            taken[idx] = true;
            ++picked;
            const ViewScore& v = scored[idx];
            batch.entries.push_back(make_pseudo_label(
                v.sample->id, view_f ? v.arg_f : v.arg_s, v.e_f, v.e_s,
                view_f ? SourceModality::f : SourceModality::s));
        }
    }
    return batch;
}

SelectionBatch random_select(const classifier::ModelSnapshot& model, const UnlabeledSet& pool,
                             int k, std::uint64_t seed) {
    if (pool.samples.empty()) fail(Err::empty_pool, "random_select: empty pool");
    if (k < 1) fail(Err::spec_invalid, "random_select: k must be >= 1");
    Rng rng(seed);
    std::vector<std::size_t> order(pool.samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `take` entries are a uniform draw
    // without replacement.
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(order.size() - i));
        std::swap(order[i], order[j]);
    }
    SelectionBatch batch;
    batch.requested = k;
    for (std::size_t i = 0; i < take; ++i)
        batch.entries.push_back(fused_pseudo(model, pool.samples[order[i]], nullptr));
    return batch;
}

}  // namespace lltc::baselines
