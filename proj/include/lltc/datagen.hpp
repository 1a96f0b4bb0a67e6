#pragma once

#include <cstdint>
#include <filesystem>

#include "lltc/core.hpp"

// Synthetic multimodal datasets with controllable difficulty, plus the CSV
// schema used to exchange datasets with other tools (docs/formats.md).
//
// Generation is reproducible bit-for-bit across platforms: splitmix64 streams
// and Irwin-Hall normal deviates only (see rng.hpp).

namespace lltc::datagen {

struct SynthSpec {
    int classes = 6;
    int dim_f = 16;
    int dim_s = 16;
    std::int64_t n_labeled = 200;
    std::int64_t n_unlabeled = 5000;
    std::int64_t n_test = 1000;
    // Expected inter-centroid distance divided by the per-coordinate cluster
    // sigma (which is 1).
    double class_separation = 3.0;
    // Probability that a sample's modality-s vector comes from the same class
    // cluster as its modality-f vector; otherwise s is drawn from a uniformly
    // random class.
    double modality_correlation = 1.0;
    // Fraction of the unlabeled pool flagged as noise and drawn from a broad
    // background distribution instead of any class cluster.
    double noise_fraction = 0.0;
    std::uint64_t seed = 1;
    SampleBytes bytes;

    void validate() const;  // throws Err::spec_invalid
};

struct Dataset {
    LabeledSet labeled;
    UnlabeledSet unlabeled;
    LabeledSet test;
    int classes = 0;
    int dim_f = 0;
    int dim_s = 0;
};

Dataset generate(const SynthSpec& spec);

// Writes labeled.csv / unlabeled.csv / test.csv under dir.
void save(const Dataset& d, const std::filesystem::path& dir);

// Loads the three files back. classes drives label validation; bytes
// reconstructs size_bytes (sizes are a pure function of dims and config).
Dataset load(const std::filesystem::path& dir, int classes, const SampleBytes& bytes = {});

// Single-file primitives, exposed for tools and tests.
std::string set_to_csv(std::span<const Sample> samples, std::span<const int> labels);
struct ParsedSet {
    std::vector<Sample> samples;
    std::vector<int> labels;  // -1 where unknown
    int dim_f = 0;
    int dim_s = 0;
};
ParsedSet set_from_csv(const std::string& text, const std::string& origin, int classes,
                       const SampleBytes& bytes);

}  // namespace lltc::datagen
