#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lltc/errors.hpp"

namespace lltc {

// Simulated wire encoding of one sample: a fixed header plus a fixed number
// of bytes per feature value. Absolute sizes are simulation parameters; the
// traffic curves only depend on ratios.
struct SampleBytes {
    std::int64_t bytes_per_value = 8;
    std::int64_t header_bytes = 16;
};

std::int64_t sample_size_bytes(int dim_f, int dim_s, const SampleBytes& cfg = {});

// One multimodal item: two modality feature vectors, optional ground-truth
// class (present in synthetic data, absent for noise / external pools), a
// noise flag, and its simulated size on the wire.
struct Sample {
    std::int64_t id = 0;
    std::vector<double> feat_f;
    std::vector<double> feat_s;
    std::optional<int> true_label;
    bool is_noise = false;
    std::int64_t size_bytes = 0;
};

struct LabeledSet {
    std::vector<Sample> samples;
    std::vector<int> labels;  // parallel to samples, each in [0, classes)
    int classes = 0;

    std::size_t size() const { return samples.size(); }
    void validate() const;  // throws Err::spec_invalid on broken invariants
};

struct UnlabeledSet {
    std::vector<Sample> samples;

    std::size_t size() const { return samples.size(); }
};

// Normalized probability vector over `classes()` classes.
class ClassDistribution {
  public:
    ClassDistribution() = default;

    std::span<const double> probs() const { return probs_; }
    int classes() const { return static_cast<int>(probs_.size()); }
    double operator[](int j) const { return probs_[static_cast<std::size_t>(j)]; }

    // Index of the largest probability; ties resolve to the lowest index.
    int argmax() const;

    friend ClassDistribution make_distribution(std::span<const double> raw);

  private:
    explicit ClassDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}
    std::vector<double> probs_;
};

// Normalizes a non-negative score vector into a distribution.
// Rejects: any negative entry (Err::negative_entry), all zeros
// (Err::all_zero), any non-finite entry (Err::non_finite), fewer than two
// entries (Err::class_count_mismatch).
ClassDistribution make_distribution(std::span<const double> raw);

// Shannon entropy in nats. Values live in [0, ln c].
struct EntropyScore {
    double value = 0.0;
};

enum class SourceModality {
    f,
    s,
    agreement,  // both modalities predicted the same class
    fused,      // label taken from the averaged distribution (baselines only)
};

const char* source_modality_name(SourceModality m);

struct PseudoLabel {
    std::int64_t sample_id = 0;
    int label = 0;
    EntropyScore entropy_f;
    EntropyScore entropy_s;
    EntropyScore joint_entropy;  // always (entropy_f + entropy_s) / 2
    SourceModality source = SourceModality::agreement;
};

PseudoLabel make_pseudo_label(std::int64_t sample_id, int label, EntropyScore entropy_f,
                              EntropyScore entropy_s, SourceModality source);

// Pseudo-labels that passed the low-entropy threshold; eligible for selection.
struct CandidateSet {
    std::vector<PseudoLabel> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

// The per-iteration batch admitted to the training set.
struct SelectionBatch {
    std::vector<PseudoLabel> entries;
    int iteration = 1;
    int requested = 0;  // the k that was asked for

    std::size_t size() const { return entries.size(); }
    bool shortfall() const { return static_cast<int>(entries.size()) < requested; }
};

}  // namespace lltc
