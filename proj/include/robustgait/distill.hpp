#pragma once

#include <array>
#include <string>
#include <vector>

#include "robustgait/types.hpp"

namespace robustgait::distill {

struct EmbeddingBatch {
    std::vector<std::vector<double>> vectors; // B rows of dimension d
    std::vector<int> labels;                  // B identity labels
};

struct LossConfig {
    double temperature = 0.07; // contrastive
    double margin = 0.2;       // triplet
};

struct LossWeights {
    // con-clean, con-noisy, softmax-clean, softmax-noisy, triplet-clean,
    // triplet-noisy
    std::array<double, 6> lambda = {1, 1, 1, 1, 1, 1};
};

/// Symmetric normalized temperature-scaled contrastive loss between
/// index-aligned teacher/student batches: row i of each batch is the positive
/// pair, all other rows of the opposite batch are negatives. Rows are
/// L2-normalized before similarity.
double contrastive_loss(const EmbeddingBatch& teacher, const EmbeddingBatch& student,
                        const LossConfig& cfg);

/// Mean cross-entropy over the batch, log-sum-exp stabilized.
double softmax_loss(const std::vector<std::vector<double>>& logits,
                    const std::vector<int>& labels);

/// Batch-all hinge triplet: mean over valid (anchor, positive, negative) of
/// max(0, d(a,p) - d(a,n) + margin), euclidean distances.
double triplet_loss(const EmbeddingBatch& batch, const LossConfig& cfg);

/// Weighted sum of the six loss components.
double total_loss(const std::array<double, 6>& components, const LossWeights& weights);

} // namespace robustgait::distill
