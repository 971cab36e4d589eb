#include "robustgait/environmental.hpp"

#include <algorithm>
#include <cmath>

#include "robustgait/pixel.hpp"
#include "robustgait/severity.hpp"

namespace robustgait::environmental {

namespace {

constexpr double kVignetteSlope = 0.18;
constexpr double kRainColor = 0.78;        // light gray streaks
constexpr double kRainStreakDensity = 0.002; // streaks per pixel
constexpr double kRainSlantDeg = 10.0;
constexpr int kHazeGrid = 4;

template <typename PerFrame>
FrameSequence map_frames(const FrameSequence& seq, Exec exec, PerFrame&& fn) {
    seq.validate();
    FrameSequence out = seq;
    for_each_frame(seq.size(), exec,
                   [&](std::size_t t) { out.frames[t] = fn(seq.frames[t], t); });
    return out;
}

} // namespace

double low_light_mask(int y, int x, int height, int width, int strength) {
    const double cy = (height - 1) / 2.0;
    const double cx = (width - 1) / 2.0;
    const double r = std::hypot(y - cy, x - cx);
    const double r_max = std::hypot(cy, cx);
    if (r_max == 0.0) return 1.0;
    return clip01(1.0 - strength * kVignetteSlope * r / r_max);
}

FrameSequence low_light(const FrameSequence& seq, Severity severity, Exec exec) {
    const int strength =
        static_cast<int>(severity_params(CorruptionKind::LowLight, severity)[0]);
    // Mask is identical for every frame; precompute once.
    std::vector<double> mask(static_cast<std::size_t>(seq.height) * seq.width);
    for (int y = 0; y < seq.height; ++y)
        for (int x = 0; x < seq.width; ++x)
            mask[static_cast<std::size_t>(y) * seq.width + x] =
                low_light_mask(y, x, seq.height, seq.width, strength);
    return map_frames(seq, exec, [&](const Frame& f, std::size_t) {
        ImageF img = normalize(f);
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                const double m = mask[static_cast<std::size_t>(y) * f.width + x];
                for (int c = 0; c < 3; ++c) img.at(y, x, c) *= m;
            }
        return denormalize(img);
    });
}

FrameSequence fog(const FrameSequence& seq, Severity severity,
                  const SeededRng& rng, Exec exec) {
    const double density = severity_params(CorruptionKind::Fog, severity)[0];
    const double alpha = 0.08 * density + 0.1;
    const double blend = alpha * density;
    return map_frames(seq, exec, [&](const Frame& f, std::size_t t) {
        SeededRng frame_rng = rng.child(t);
        // Low-frequency haze field: coarse seeded grid, bilinearly upsampled.
        double grid[kHazeGrid][kHazeGrid];
        for (auto& row : grid)
            for (auto& v : row) v = frame_rng.uniform();

        ImageF img = normalize(f);
        // Uniform white layer first; this is the contrast reduction.
        for (auto& p : img.pixels) p = (1.0 - blend) * p + blend;

        double mean = 0.0;
        for (auto p : img.pixels) mean += p;
        mean /= static_cast<double>(img.pixels.size());

        // Haze patches pull pixels toward the frame mean, so local density
        // varies while per-frame variance can only shrink.
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                const double gy =
                    static_cast<double>(y) / std::max(1, f.height - 1) * (kHazeGrid - 1);
                const double gx =
                    static_cast<double>(x) / std::max(1, f.width - 1) * (kHazeGrid - 1);
                const int y0 = std::min(static_cast<int>(gy), kHazeGrid - 2);
                const int x0 = std::min(static_cast<int>(gx), kHazeGrid - 2);
                const double fy = gy - y0, fx = gx - x0;
                const double h =
                    grid[y0][x0] * (1 - fy) * (1 - fx) + grid[y0][x0 + 1] * (1 - fy) * fx +
                    grid[y0 + 1][x0] * fy * (1 - fx) + grid[y0 + 1][x0 + 1] * fy * fx;
                const double u = 0.5 * blend * h;
                for (int c = 0; c < 3; ++c) {
                    double& p = img.at(y, x, c);
                    p = (1.0 - u) * p + u * mean;
                }
            }
        return denormalize(img);
    });
}

FrameSequence rain(const FrameSequence& seq, Severity severity,
                   const SeededRng& rng, Exec exec) {
    const auto& p = severity_params(CorruptionKind::Rain, severity);
    const double brightness = p[0];
    const int drop_length = static_cast<int>(p[1]);
    const int streaks = std::max(
        1, static_cast<int>(round_half_away(kRainStreakDensity * seq.height * seq.width)));
    return map_frames(seq, exec, [&](const Frame& f, std::size_t t) {
        SeededRng frame_rng = rng.child(t);
        std::vector<double> overlay(static_cast<std::size_t>(f.height) * f.width, 0.0);
        for (int s = 0; s < streaks; ++s) {
            const double y0 = frame_rng.uniform(0.0, f.height);
            const double x0 = frame_rng.uniform(0.0, f.width);
            const double slant =
                frame_rng.uniform(-kRainSlantDeg, kRainSlantDeg) * M_PI / 180.0;
            const double dy = std::cos(slant);
            const double dx = std::sin(slant);
            for (int i = 0; i < drop_length; ++i) {
                const int yi = static_cast<int>(round_half_away(y0 + i * dy));
                const int xi = static_cast<int>(round_half_away(x0 + i * dx));
                if (yi < 0 || yi >= f.height || xi < 0 || xi >= f.width) continue;
                overlay[static_cast<std::size_t>(yi) * f.width + xi] = 0.85;
            }
        }
        // 3-tap blur along the (near-vertical) streak direction.
        std::vector<double> blurred(overlay.size(), 0.0);
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                const int ym = reflect_index(y - 1, f.height);
                const int yp = reflect_index(y + 1, f.height);
                blurred[static_cast<std::size_t>(y) * f.width + x] =
                    0.25 * overlay[static_cast<std::size_t>(ym) * f.width + x] +
                    0.5 * overlay[static_cast<std::size_t>(y) * f.width + x] +
                    0.25 * overlay[static_cast<std::size_t>(yp) * f.width + x];
            }

        ImageF img = normalize(f);
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                const double a = blurred[static_cast<std::size_t>(y) * f.width + x];
                if (a <= 0.0) continue;
                for (int c = 0; c < 3; ++c) {
                    double& v = img.at(y, x, c);
                    v = (1.0 - a) * v + a * kRainColor;
                }
            }
        for (auto& v : img.pixels) v = clip01(v * brightness);
        return denormalize(img);
    });
}

FrameSequence snow(const FrameSequence& seq, Severity severity,
                   const SeededRng& rng, Exec exec) {
    (void)rng; // quantile whitening and brightness are deterministic
    const double coeff = severity_params(CorruptionKind::Snow, severity)[0];
    return map_frames(seq, exec, [&](const Frame& f, std::size_t) {
        ImageF img = normalize(f);
        const std::size_t n = static_cast<std::size_t>(f.height) * f.width;
        std::vector<double> lightness(n);
        for (std::size_t i = 0; i < n; ++i)
            lightness[i] =
                (img.pixels[3 * i] + img.pixels[3 * i + 1] + img.pixels[3 * i + 2]) / 3.0;
        std::vector<double> sorted = lightness;
        std::sort(sorted.begin(), sorted.end());
        const auto qidx = static_cast<std::size_t>((1.0 - coeff) * (n - 1));
        const double threshold = sorted[qidx];

        for (std::size_t i = 0; i < n; ++i)
            if (lightness[i] > threshold)
                for (int c = 0; c < 3; ++c) {
                    double& v = img.pixels[3 * i + c];
                    v = v + 0.5 * (1.0 - v);
                }
        for (auto& v : img.pixels) v = clip01(v * (1.0 + coeff));
        return denormalize(img);
    });
}

} // namespace robustgait::environmental
