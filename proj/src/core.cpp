#include "lltc/core.hpp"

#include <cmath>
#include <unordered_set>

namespace lltc {

const char* err_name(Err e) {
    switch (e) {
        case Err::negative_entry: return "NegativeEntry";
        case Err::all_zero: return "AllZero";
        case Err::non_finite: return "NonFinite";
        case Err::class_count_mismatch: return "ClassCountMismatch";
        case Err::empty_class: return "EmptyClass";
        case Err::degenerate: return "Degenerate";
        case Err::dimension_mismatch: return "DimensionMismatch";
        case Err::empty_candidate_set: return "EmptyCandidateSet";
        case Err::empty_pool: return "EmptyPool";
        case Err::pool_exhausted: return "PoolExhausted";
        case Err::empty_test_set: return "EmptyTestSet";
        case Err::spec_invalid: return "SpecInvalid";
        case Err::config_invalid: return "ConfigInvalid";
        case Err::io_failure: return "IoFailure";
        case Err::schema_violation: return "SchemaViolation";
        case Err::unsupported_backend: return "UnsupportedBackend";
    }
    return "Unknown";
}

std::int64_t sample_size_bytes(int dim_f, int dim_s, const SampleBytes& cfg) {
    return cfg.header_bytes + cfg.bytes_per_value * (static_cast<std::int64_t>(dim_f) + dim_s);
}

void LabeledSet::validate() const {
    if (samples.size() != labels.size())
        fail(Err::spec_invalid, "labeled set: |samples| != |labels|");
    if (classes < 2) fail(Err::class_count_mismatch, "labeled set: classes must be >= 2");
    std::unordered_set<std::int64_t> seen;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= classes)
            fail(Err::spec_invalid,
                 "labeled set: label " + std::to_string(labels[i]) + " out of range at index " +
                     std::to_string(i));
        if (!seen.insert(samples[i].id).second)
            fail(Err::spec_invalid,
                 "labeled set: duplicate sample id " + std::to_string(samples[i].id));
    }
}

int ClassDistribution::argmax() const {
    int best = 0;
    for (int j = 1; j < classes(); ++j)
        if (probs_[static_cast<std::size_t>(j)] > probs_[static_cast<std::size_t>(best)]) best = j;
    return best;
}

ClassDistribution make_distribution(std::span<const double> raw) {
    if (raw.size() < 2)
        fail(Err::class_count_mismatch, "distribution needs at least two classes, got " +
                                            std::to_string(raw.size()));
    double sum = 0.0;
    for (double v : raw) {
        if (!std::isfinite(v)) fail(Err::non_finite, "distribution entry is not finite");
        if (v < 0.0) fail(Err::negative_entry, "distribution entry is negative");
        sum += v;
    }
    if (sum <= 0.0) fail(Err::all_zero, "distribution entries sum to zero");
    std::vector<double> probs(raw.begin(), raw.end());
    for (double& v : probs) v /= sum;
    return ClassDistribution(std::move(probs));
}

const char* source_modality_name(SourceModality m) {
    switch (m) {
        case SourceModality::f: return "f";
        case SourceModality::s: return "s";
        case SourceModality::agreement: return "agreement";
        case SourceModality::fused: return "fused";
    }
    return "?";
}

PseudoLabel make_pseudo_label(std::int64_t sample_id, int label, EntropyScore entropy_f,
                              EntropyScore entropy_s, SourceModality source) {
    PseudoLabel p;
    p.sample_id = sample_id;
    p.label = label;
    p.entropy_f = entropy_f;
    p.entropy_s = entropy_s;
    p.joint_entropy = EntropyScore{(entropy_f.value + entropy_s.value) / 2.0};
    p.source = source;
    return p;
}

}  // namespace lltc
