#pragma once

#include "robustgait/rng.hpp"
#include "robustgait/types.hpp"

namespace robustgait::temporal {

/// Holds k = max(1, round(p*T)) frames at seeded indices in {1..T-1}; each
/// held frame repeats its predecessor, so runs of drawn indices propagate.
/// Frame 0 is never replaced. Single-pass, not frame-parallel.
FrameSequence freeze(const FrameSequence& seq, Severity severity,
                     const SeededRng& rng);

/// Downsample by the scheduled rate, then repeat kept frames to the original
/// length. Deterministic; no rng involved.
FrameSequence sampling(const FrameSequence& seq, Severity severity);

} // namespace robustgait::temporal
