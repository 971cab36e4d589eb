#pragma once

#include "robustgait/exec.hpp"
#include "robustgait/rng.hpp"
#include "robustgait/types.hpp"

namespace robustgait::environmental {

/// Radial vignette; mask falls off linearly from the center, scaled by the
/// severity strength. The exact center pixel is never darkened.
FrameSequence low_light(const FrameSequence& seq, Severity severity,
                        Exec exec = Exec::Parallel);

/// Uniform semi-transparent white layer plus low-frequency seeded haze
/// patches. Per-frame contrast never increases.
FrameSequence fog(const FrameSequence& seq, Severity severity,
                  const SeededRng& rng, Exec exec = Exec::Parallel);

/// Seeded slanted streaks with a short blur along the streak direction,
/// followed by a global brightness drop. Streaks are re-drawn per frame.
FrameSequence rain(const FrameSequence& seq, Severity severity,
                   const SeededRng& rng, Exec exec = Exec::Parallel);

/// Whitens the brightest quantile of pixels and raises global brightness.
FrameSequence snow(const FrameSequence& seq, Severity severity,
                   const SeededRng& rng, Exec exec = Exec::Parallel);

/// Closed-form vignette mask value at (y, x); exposed for tests.
double low_light_mask(int y, int x, int height, int width, int strength);

} // namespace robustgait::environmental
