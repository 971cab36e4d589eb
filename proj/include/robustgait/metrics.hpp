#pragma once

#include <string>
#include <vector>

#include "robustgait/types.hpp"

namespace robustgait::metrics {

struct EmbeddingRecord {
    std::string identity;
    std::string condition;
    std::string view;
    std::string sequence_id; // optional; used for same-sequence exclusion
    std::vector<double> vector;
};

enum class Distance { Euclidean, Cosine };

Distance distance_from_string(const std::string& name);
std::string to_string(Distance d);

/// Fraction (x100) of probes whose k nearest gallery records contain a
/// matching identity. Gallery entries sharing the probe's full
/// (identity, condition, view, sequence_id) tuple are excluded. Distance ties
/// break by gallery index.
double rank_k_accuracy(const std::vector<EmbeddingRecord>& probes,
                       const std::vector<EmbeddingRecord>& gallery, int k,
                       Distance distance);

/// Standard mAP (x100) over the ranked gallery with the same exclusion rule.
double mean_average_precision(const std::vector<EmbeddingRecord>& probes,
                              const std::vector<EmbeddingRecord>& gallery,
                              Distance distance);

struct AccuracyPair {
    double clean = 0.0;     // percentage, must be > 0
    double perturbed = 0.0; // percentage
};

struct RobustnessScore {
    double absolute = 0.0; // delta_a = 1 - (Dc - Dp)/100
    double relative = 0.0; // delta_r = 1 - (Dc - Dp)/Dc
};

RobustnessScore robustness(const AccuracyPair& pair);

/// |a AND b| / |a OR b|; 1.0 when both masks are empty.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

} // namespace robustgait::metrics
