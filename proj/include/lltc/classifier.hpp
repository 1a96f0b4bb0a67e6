#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lltc/core.hpp"

namespace lltc::classifier {

struct TrainConfig {
    double learning_rate = 0.5;
    int epochs = 200;
    double l2 = 1e-4;
    std::uint64_t seed = 0;  // unused by the full-batch trainer (cold start
                             // from zeros); gradient_check seeds its
                             // evaluation point from it

    void validate() const;
};

// Linear-softmax head for one modality. Weights are classes x (dim+1)
// row-major; the last column of each row is the bias.
struct Head {
    int classes = 0;
    int dim = 0;
    std::vector<double> w;

    int cols() const { return dim + 1; }
    std::span<const double> row(int r) const {
        return {w.data() + static_cast<std::size_t>(r) * cols(), static_cast<std::size_t>(cols())};
    }
};

// Immutable trained state pushed cloud -> edge. One independent head per
// modality; fusion happens at prediction time by averaging distributions.
struct ModelSnapshot {
    Head f;
    Head s;
    std::int64_t version = 0;
    std::int64_t size_bytes = 0;
};

std::int64_t model_size_bytes(const Head& f, const Head& s);

// Flattened per-modality design matrix, n x dim row-major.
struct DesignMatrix {
    int n = 0;
    int dim = 0;
    std::vector<double> x;

    std::span<const double> row(int i) const {
        return {x.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
};

DesignMatrix modality_matrix(std::span<const Sample> samples, bool modality_f);

// Regularized multinomial cross-entropy, averaged over samples; the bias
// column is excluded from the L2 term.
double head_loss(const Head& head, const DesignMatrix& X, std::span<const int> y, double l2);

// Analytic gradient of head_loss into grad (same layout as head.w).
// Returns the loss at the evaluation point.
double head_loss_grad(const Head& head, const DesignMatrix& X, std::span<const int> y, double l2,
                      std::span<double> grad);

// Full-batch gradient descent from zero weights. Deterministic.
Head train_head(const DesignMatrix& X, std::span<const int> y, int classes,
                const TrainConfig& cfg);

// Trains both modality heads on the labeled set.
// Errors: Err::empty_class if some class has no sample, Err::degenerate if
// the loss leaves the finite range during training.
ModelSnapshot train(const LabeledSet& labeled, const TrainConfig& cfg, std::int64_t version = 1);

ClassDistribution predict_head(const Head& head, std::span<const double> feat);
ClassDistribution predict_f(const ModelSnapshot& model, std::span<const double> feat_f);
ClassDistribution predict_s(const ModelSnapshot& model, std::span<const double> feat_s);

// Mean of the two per-modality distributions.
ClassDistribution predict_fused(const ModelSnapshot& model, const Sample& sample);

// Max abs difference between the analytic gradient and central finite
// differences (h = 1e-5) over all weights of both heads, evaluated at a
// seeded random point.
double gradient_check(const LabeledSet& labeled, const TrainConfig& cfg);

// Versioned JSON record; field order documented in docs/formats.md.
std::string snapshot_to_json(const ModelSnapshot& m);
ModelSnapshot snapshot_from_json(const std::string& text);

}  // namespace lltc::classifier
