#pragma once

#include <span>
#include <vector>

#include "lltc/classifier.hpp"
#include "lltc/core.hpp"

// Entropy-based selection of auto-labeled multimodal samples: score the pool
// with the current model, keep the low-joint-entropy candidates, and admit
// the k most confident per iteration (optionally class-balanced).

namespace lltc::llselect {

// -sum p_j ln p_j, with 0 ln 0 = 0. Nats.
EntropyScore entropy(const ClassDistribution& d);

// Arithmetic mean of the two per-modality entropies.
EntropyScore joint_entropy(EntropyScore e_f, EntropyScore e_s);

struct ResolvedLabel {
    int label = 0;
    SourceModality source = SourceModality::agreement;
};

// If both modalities agree on the argmax, that class wins. Otherwise the
// modality with the strictly smaller prediction entropy provides the label;
// an exact entropy tie goes to modality f. Argmax ties within a distribution
// resolve to the lowest class index.
ResolvedLabel resolve_label(const ClassDistribution& d_f, const ClassDistribution& d_s);

// One PseudoLabel per pool sample, ordered by sample id.
std::vector<PseudoLabel> score_pool(const classifier::ModelSnapshot& model,
                                    const UnlabeledSet& pool);

// Entries with joint entropy <= tau, in input order.
CandidateSet candidate_filter(std::span<const PseudoLabel> scored, double tau);

// The k lowest-joint-entropy candidates; ties break on ascending sample id.
// Every selected entry has joint entropy <= every unselected one. If the
// candidate set holds fewer than k entries the whole set is returned and the
// batch reports the shortfall.
SelectionBatch select_batch(const CandidateSet& z, int k);

// Class-balanced variant: quota floor(k/c) per predicted class, lowest joint
// entropy first within each class; leftover slots are filled globally from
// the remaining candidates.
SelectionBatch select_balanced(const CandidateSet& z, int k, int classes);

// k_t = k0 + t * growth for t = 0..n_iters-1.
std::vector<int> iteration_schedule(int k0, int n_iters, int growth);

// Default low-entropy threshold: half the maximum possible entropy.
double default_tau(int classes);

}  // namespace lltc::llselect
