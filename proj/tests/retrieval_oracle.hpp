#pragma once

// Brute-force re-identification oracle used to cross-check the library's
// retrieval metrics. Written independently of the library implementation:
// plain insertion-ranked linear scans, no shared helpers.

#include <cmath>
#include <cstddef>
#include <vector>

#include "robustgait/metrics.hpp"

namespace oracle {

inline double dist(const robustgait::metrics::EmbeddingRecord& a,
                   const robustgait::metrics::EmbeddingRecord& b, bool cosine) {
    double dot = 0.0, na = 0.0, nb = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < a.vector.size(); ++i) {
        dot += a.vector[i] * b.vector[i];
        na += a.vector[i] * a.vector[i];
        nb += b.vector[i] * b.vector[i];
        const double diff = a.vector[i] - b.vector[i];
        d2 += diff * diff;
    }
    if (!cosine) return std::sqrt(d2);
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

// Ranked gallery indices for one probe, same-tuple entries dropped, ties by
// original gallery index (insertion sort keeps it stable).
inline std::vector<std::size_t>
ranking(const robustgait::metrics::EmbeddingRecord& probe,
        const std::vector<robustgait::metrics::EmbeddingRecord>& gallery, bool cosine) {
    std::vector<std::size_t> order;
    std::vector<double> dists;
    for (std::size_t g = 0; g < gallery.size(); ++g) {
        const auto& rec = gallery[g];
        if (rec.identity == probe.identity && rec.condition == probe.condition &&
            rec.view == probe.view && rec.sequence_id == probe.sequence_id)
            continue;
        const double d = dist(probe, rec, cosine);
        std::size_t pos = order.size();
        while (pos > 0 && dists[pos - 1] > d) --pos;
        order.insert(order.begin() + pos, g);
        dists.insert(dists.begin() + pos, d);
    }
    return order;
}

inline double rank_k(const std::vector<robustgait::metrics::EmbeddingRecord>& probes,
                     const std::vector<robustgait::metrics::EmbeddingRecord>& gallery,
                     int k, bool cosine) {
    std::size_t hits = 0;
    for (const auto& p : probes) {
        const auto order = ranking(p, gallery, cosine);
        for (std::size_t i = 0; i < order.size() && i < static_cast<std::size_t>(k); ++i)
            if (gallery[order[i]].identity == p.identity) {
                ++hits;
                break;
            }
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(probes.size());
}

inline double map(const std::vector<robustgait::metrics::EmbeddingRecord>& probes,
                  const std::vector<robustgait::metrics::EmbeddingRecord>& gallery,
                  bool cosine) {
    double sum_ap = 0.0;
    for (const auto& p : probes) {
        const auto order = ranking(p, gallery, cosine);
        std::size_t relevant = 0;
        for (auto g : order)
            if (gallery[g].identity == p.identity) ++relevant;
        if (relevant == 0) continue;
        double ap = 0.0;
        std::size_t seen = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            if (gallery[order[i]].identity == p.identity) {
                ++seen;
                ap += static_cast<double>(seen) / static_cast<double>(i + 1);
            }
        sum_ap += ap / static_cast<double>(relevant);
    }
    return 100.0 * sum_ap / static_cast<double>(probes.size());
}

} // namespace oracle
