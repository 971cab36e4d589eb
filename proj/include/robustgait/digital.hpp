#pragma once

#include "robustgait/exec.hpp"
#include "robustgait/rng.hpp"
#include "robustgait/types.hpp"

namespace robustgait::digital {

/// Normalized disk-shaped convolution kernel with a softened (aliased) edge.
struct DiskKernel {
    int radius = 0;
    int size = 0; // 2*radius + 1
    std::vector<double> taps; // size*size, sums to 1

    double at(int dy, int dx) const {
        return taps[static_cast<std::size_t>(dy + radius) * size + (dx + radius)];
    }
};

DiskKernel make_disk_kernel(int radius, double alias_sigma);

FrameSequence gaussian_noise(const FrameSequence& seq, Severity severity,
                             const SeededRng& rng, Exec exec = Exec::Parallel);
FrameSequence speckle_noise(const FrameSequence& seq, Severity severity,
                            const SeededRng& rng, Exec exec = Exec::Parallel);
FrameSequence shot_noise(const FrameSequence& seq, Severity severity,
                         const SeededRng& rng, Exec exec = Exec::Parallel);
FrameSequence impulse_noise(const FrameSequence& seq, Severity severity,
                            const SeededRng& rng, Exec exec = Exec::Parallel,
                            double amount_override = -1.0);
FrameSequence defocus_blur(const FrameSequence& seq, Severity severity,
                           Exec exec = Exec::Parallel);
FrameSequence zoom_blur(const FrameSequence& seq, Severity severity,
                        Exec exec = Exec::Parallel);
/// All frames of a sequence share one blur angle, drawn from rng.
FrameSequence motion_blur(const FrameSequence& seq, Severity severity,
                          const SeededRng& rng, Exec exec = Exec::Parallel);
FrameSequence motion_blur_with_angle(const FrameSequence& seq, Severity severity,
                                     double angle_deg, Exec exec = Exec::Parallel);
FrameSequence zoom_in(const FrameSequence& seq, Severity severity,
                      Exec exec = Exec::Parallel);

} // namespace robustgait::digital
