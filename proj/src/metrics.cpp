#include "robustgait/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace robustgait::metrics {

namespace {

void check_inputs(const std::vector<EmbeddingRecord>& probes,
                  const std::vector<EmbeddingRecord>& gallery) {
    if (gallery.empty()) throw EmptyGallery("gallery is empty");
    if (probes.empty()) throw EmptyGallery("probe set is empty");
    const std::size_t d = probes.front().vector.size();
    for (const auto& r : probes)
        if (r.vector.size() != d)
            throw DimMismatch("probe embedding dimensions differ");
    for (const auto& r : gallery)
        if (r.vector.size() != d)
            throw DimMismatch("gallery dimension differs from probe dimension");
}

double pair_distance(const std::vector<double>& a, const std::vector<double>& b,
                     Distance distance) {
    if (distance == Distance::Euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    const double denom = std::sqrt(na) * std::sqrt(nb);
    return denom == 0.0 ? 1.0 : 1.0 - dot / denom;
}

bool excluded(const EmbeddingRecord& probe, const EmbeddingRecord& g) {
    return probe.identity == g.identity && probe.condition == g.condition &&
           probe.view == g.view && probe.sequence_id == g.sequence_id;
}

/// Candidate gallery indices ranked by distance, ties by gallery index.
std::vector<std::size_t> ranked_candidates(const EmbeddingRecord& probe,
                                           const std::vector<EmbeddingRecord>& gallery,
                                           Distance distance) {
    std::vector<std::size_t> order;
    std::vector<double> dist(gallery.size());
    for (std::size_t i = 0; i < gallery.size(); ++i) {
        if (excluded(probe, gallery[i])) continue;
        dist[i] = pair_distance(probe.vector, gallery[i].vector, distance);
        order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    return order;
}

} // namespace

Distance distance_from_string(const std::string& name) {
    if (name == "euclidean") return Distance::Euclidean;
    if (name == "cosine") return Distance::Cosine;
    throw InvalidConfig("unknown distance: " + name);
}

std::string to_string(Distance d) {
    return d == Distance::Euclidean ? "euclidean" : "cosine";
}

double rank_k_accuracy(const std::vector<EmbeddingRecord>& probes,
                       const std::vector<EmbeddingRecord>& gallery, int k,
                       Distance distance) {
    check_inputs(probes, gallery);
    if (k < 1) throw InvalidConfig("k must be positive");
    std::size_t hits = 0;
    for (const auto& probe : probes) {
        const auto order = ranked_candidates(probe, gallery, distance);
        const std::size_t top = std::min<std::size_t>(k, order.size());
        for (std::size_t r = 0; r < top; ++r)
            if (gallery[order[r]].identity == probe.identity) {
                ++hits;
                break;
            }
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(probes.size());
}

double mean_average_precision(const std::vector<EmbeddingRecord>& probes,
                              const std::vector<EmbeddingRecord>& gallery,
                              Distance distance) {
    check_inputs(probes, gallery);
    double ap_sum = 0.0;
    for (const auto& probe : probes) {
        const auto order = ranked_candidates(probe, gallery, distance);
        std::size_t matches = 0;
        double precision_sum = 0.0;
        for (std::size_t r = 0; r < order.size(); ++r)
            if (gallery[order[r]].identity == probe.identity) {
                ++matches;
                precision_sum += static_cast<double>(matches) / static_cast<double>(r + 1);
            }
        if (matches > 0) ap_sum += precision_sum / static_cast<double>(matches);
    }
    return 100.0 * ap_sum / static_cast<double>(probes.size());
}

RobustnessScore robustness(const AccuracyPair& pair) {
    if (!std::isfinite(pair.clean) || !std::isfinite(pair.perturbed))
        throw InvalidBaseline("accuracies must be finite");
    if (pair.clean <= 0.0)
        throw InvalidBaseline("clean accuracy must be > 0 for relative robustness");
    const double drop = pair.clean - pair.perturbed;
    return {1.0 - drop / 100.0, 1.0 - drop / pair.clean};
}

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
    if (a.height != b.height || a.width != b.width)
        throw DimMismatch("mask dimensions differ");
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const bool pa = a.pixels[i] != 0, pb = b.pixels[i] != 0;
        inter += (pa && pb);
        uni += (pa || pb);
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace robustgait::metrics
