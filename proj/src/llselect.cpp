#include "lltc/llselect.hpp"

#include <algorithm>
#include <cmath>

namespace lltc::llselect {

EntropyScore entropy(const ClassDistribution& d) {
    double h = 0.0;
    for (double p : d.probs())
        if (p > 0.0) h -= p * std::log(p);
    return EntropyScore{h};
}

EntropyScore joint_entropy(EntropyScore e_f, EntropyScore e_s) {
    return EntropyScore{(e_f.value + e_s.value) / 2.0};
}

ResolvedLabel resolve_label(const ClassDistribution& d_f, const ClassDistribution& d_s) {
    if (d_f.classes() != d_s.classes())
        fail(Err::class_count_mismatch,
             "modality distributions disagree on class count: " + std::to_string(d_f.classes()) +
                 " vs " + std::to_string(d_s.classes()));
    const int arg_f = d_f.argmax();
    const int arg_s = d_s.argmax();
    if (arg_f == arg_s) return {arg_f, SourceModality::agreement};
    if (entropy(d_s).value < entropy(d_f).value) return {arg_s, SourceModality::s};
    return {arg_f, SourceModality::f};
}

std::vector<PseudoLabel> score_pool(const classifier::ModelSnapshot& model,
                                    const UnlabeledSet& pool) {
    if (pool.samples.empty()) fail(Err::empty_pool, "score_pool: empty pool");
    std::vector<PseudoLabel> out;
    out.reserve(pool.samples.size());
    for (const Sample& sample : pool.samples) {
        ClassDistribution d_f = classifier::predict_f(model, sample.feat_f);
        ClassDistribution d_s = classifier::predict_s(model, sample.feat_s);
        ResolvedLabel resolved = resolve_label(d_f, d_s);
        out.push_back(make_pseudo_label(sample.id, resolved.label, entropy(d_f), entropy(d_s),
                                        resolved.source));
    }
    std::sort(out.begin(), out.end(),
              [](const PseudoLabel& a, const PseudoLabel& b) { return a.sample_id < b.sample_id; });
    return out;
}

CandidateSet candidate_filter(std::span<const PseudoLabel> scored, double tau) {
    if (tau < 0.0) fail(Err::spec_invalid, "candidate_filter: tau must be >= 0");
    CandidateSet z;
    for (const PseudoLabel& p : scored)
        if (p.joint_entropy.value <= tau) z.entries.push_back(p);
    return z;
}

namespace {

bool by_entropy_then_id(const PseudoLabel& a, const PseudoLabel& b) {
    if (a.joint_entropy.value != b.joint_entropy.value)
        return a.joint_entropy.value < b.joint_entropy.value;
    return a.sample_id < b.sample_id;
}

}  // namespace

SelectionBatch select_batch(const CandidateSet& z, int k) {
    if (k < 1) fail(Err::spec_invalid, "select_batch: k must be >= 1");
    if (z.empty()) fail(Err::empty_candidate_set, "select_batch: empty candidate set");
    std::vector<PseudoLabel> sorted = z.entries;
    std::sort(sorted.begin(), sorted.end(), by_entropy_then_id);
    SelectionBatch batch;
    batch.requested = k;
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), sorted.size());
    batch.entries.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(take));
    return batch;
}

SelectionBatch select_balanced(const CandidateSet& z, int k, int classes) {
    if (k < 1) fail(Err::spec_invalid, "select_balanced: k must be >= 1");
    if (classes < 2) fail(Err::class_count_mismatch, "select_balanced: classes must be >= 2");
    if (z.empty()) fail(Err::empty_candidate_set, "select_balanced: empty candidate set");

    std::vector<std::vector<PseudoLabel>> per_class(static_cast<std::size_t>(classes));
    for (const PseudoLabel& p : z.entries) {
        if (p.label < 0 || p.label >= classes)
            fail(Err::class_count_mismatch, "select_balanced: candidate label " +
                                                std::to_string(p.label) + " outside [0, " +
                                                std::to_string(classes) + ")");
        per_class[static_cast<std::size_t>(p.label)].push_back(p);
    }
    for (auto& bucket : per_class) std::sort(bucket.begin(), bucket.end(), by_entropy_then_id);

    SelectionBatch batch;
    batch.requested = k;
    const int quota = k / classes;
    std::vector<PseudoLabel> leftovers;
    for (auto& bucket : per_class) {
        const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(quota), bucket.size());
        batch.entries.insert(batch.entries.end(), bucket.begin(),
                             bucket.begin() + static_cast<std::ptrdiff_t>(take));
        leftovers.insert(leftovers.end(), bucket.begin() + static_cast<std::ptrdiff_t>(take),
                         bucket.end());
    }
    // Fill whatever the quotas left open with the globally most confident
    // remaining candidates.
    std::sort(leftovers.begin(), leftovers.end(), by_entropy_then_id);
    for (const PseudoLabel& p : leftovers) {
        if (static_cast<int>(batch.entries.size()) >= k) break;
        batch.entries.push_back(p);
    }
    return batch;
}

std::vector<int> iteration_schedule(int k0, int n_iters, int growth) {
    if (k0 < 1) fail(Err::spec_invalid, "iteration_schedule: k0 must be >= 1");
    if (n_iters < 1) fail(Err::spec_invalid, "iteration_schedule: n_iters must be >= 1");
    if (growth < 0) fail(Err::spec_invalid, "iteration_schedule: growth must be >= 0");
    std::vector<int> ks(static_cast<std::size_t>(n_iters));
    for (int t = 0; t < n_iters; ++t) ks[static_cast<std::size_t>(t)] = k0 + t * growth;
    return ks;
}

double default_tau(int classes) { return 0.5 * std::log(static_cast<double>(classes)); }

}  // namespace lltc::llselect
