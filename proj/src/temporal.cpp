#include "robustgait/temporal.hpp"

#include <algorithm>
#include <numeric>

#include "robustgait/pixel.hpp"
#include "robustgait/severity.hpp"

namespace robustgait::temporal {

FrameSequence freeze(const FrameSequence& seq, Severity severity,
                     const SeededRng& rng) {
    seq.validate();
    const std::size_t count = seq.size();
    if (count < 2) return seq;
    const double p = severity_params(CorruptionKind::Freeze, severity)[0];
    std::size_t k = static_cast<std::size_t>(
        std::max(1.0, round_half_away(p * static_cast<double>(count))));
    k = std::min(k, count - 1);

    // Draw k indices from {1..T-1} without replacement (partial Fisher-Yates).
    std::vector<std::size_t> indices(count - 1);
    std::iota(indices.begin(), indices.end(), 1);
    SeededRng draw = rng.child(0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + draw.uniform_index(indices.size() - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(k);
    std::sort(indices.begin(), indices.end());

    FrameSequence out = seq;
    for (std::size_t idx : indices) out.frames[idx] = out.frames[idx - 1];
    return out;
}

FrameSequence sampling(const FrameSequence& seq, Severity severity) {
    seq.validate();
    const auto rate = static_cast<std::size_t>(
        severity_params(CorruptionKind::Sampling, severity)[0]);
    FrameSequence out = seq;
    for (std::size_t t = 0; t < seq.size(); ++t)
        out.frames[t] = seq.frames[(t / rate) * rate];
    return out;
}

} // namespace robustgait::temporal
