#include "robustgait/digital.hpp"

#include <cmath>

#include "robustgait/pixel.hpp"
#include "robustgait/severity.hpp"

namespace robustgait::digital {

namespace {

// Dedicated child-stream tag for the per-sequence motion-blur angle, distinct
// from frame indices.
constexpr std::uint64_t kAngleStream = 0x616E676C65ULL;

struct Tap {
    int dy, dx;
    double w;
};

ImageF convolve_taps(const ImageF& img, const std::vector<Tap>& taps) {
    ImageF out(img.height, img.width);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc[3] = {0, 0, 0};
            for (const auto& t : taps) {
                const int sy = reflect_index(y + t.dy, img.height);
                const int sx = reflect_index(x + t.dx, img.width);
                for (int c = 0; c < 3; ++c) acc[c] += t.w * img.at(sy, sx, c);
            }
            for (int c = 0; c < 3; ++c) out.at(y, x, c) = acc[c];
        }
    }
    return out;
}

std::vector<Tap> kernel_taps(const DiskKernel& k) {
    std::vector<Tap> taps;
    taps.reserve(static_cast<std::size_t>(k.size) * k.size);
    for (int dy = -k.radius; dy <= k.radius; ++dy)
        for (int dx = -k.radius; dx <= k.radius; ++dx)
            if (double w = k.at(dy, dx); w > 0.0)
                taps.push_back({dy, dx, w});
    return taps;
}

template <typename PerFrame>
FrameSequence map_frames(const FrameSequence& seq, Exec exec, PerFrame&& fn) {
    seq.validate();
    FrameSequence out = seq;
    for_each_frame(seq.size(), exec,
                   [&](std::size_t t) { out.frames[t] = fn(seq.frames[t], t); });
    return out;
}

} // namespace

DiskKernel make_disk_kernel(int radius, double alias_sigma) {
    DiskKernel k;
    k.radius = radius;
    k.size = 2 * radius + 1;
    // Disk indicator, then a small Gaussian softens the edge (alias blur).
    std::vector<double> disk(static_cast<std::size_t>(k.size) * k.size, 0.0);
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dy * dy + dx * dx <= radius * radius)
                disk[static_cast<std::size_t>(dy + radius) * k.size + (dx + radius)] = 1.0;

    const int gr = std::max(1, static_cast<int>(std::ceil(3.0 * alias_sigma)));
    std::vector<double> gauss(static_cast<std::size_t>(2 * gr + 1) * (2 * gr + 1));
    double gsum = 0.0;
    for (int dy = -gr; dy <= gr; ++dy)
        for (int dx = -gr; dx <= gr; ++dx) {
            const double w =
                std::exp(-(dy * dy + dx * dx) / (2.0 * alias_sigma * alias_sigma));
            gauss[static_cast<std::size_t>(dy + gr) * (2 * gr + 1) + (dx + gr)] = w;
            gsum += w;
        }
    for (auto& w : gauss) w /= gsum;

    k.taps.assign(disk.size(), 0.0);
    double total = 0.0;
    for (int y = 0; y < k.size; ++y)
        for (int x = 0; x < k.size; ++x) {
            double acc = 0.0;
            for (int dy = -gr; dy <= gr; ++dy)
                for (int dx = -gr; dx <= gr; ++dx) {
                    const int sy = y + dy, sx = x + dx;
                    if (sy < 0 || sy >= k.size || sx < 0 || sx >= k.size) continue;
                    acc += disk[static_cast<std::size_t>(sy) * k.size + sx] *
                           gauss[static_cast<std::size_t>(dy + gr) * (2 * gr + 1) +
                                 (dx + gr)];
                }
            k.taps[static_cast<std::size_t>(y) * k.size + x] = acc;
            total += acc;
        }
    for (auto& w : k.taps) w /= total;
    return k;
}

FrameSequence gaussian_noise(const FrameSequence& seq, Severity severity,
                             const SeededRng& rng, Exec exec) {
    const double sigma = severity_params(CorruptionKind::GaussianNoise, severity)[0];
    return map_frames(seq, exec, [&](const Frame& f, std::size_t t) {
        SeededRng frame_rng = rng.child(t);
        ImageF img = normalize(f);
        for (auto& p : img.pixels) p = clip01(p + sigma * frame_rng.normal());
        return denormalize(img);
    });
}

FrameSequence speckle_noise(const FrameSequence& seq, Severity severity,
                            const SeededRng& rng, Exec exec) {
    const double scale = severity_params(CorruptionKind::SpeckleNoise, severity)[0];
    return map_frames(seq, exec, [&](const Frame& f, std::size_t t) {
        SeededRng frame_rng = rng.child(t);
        ImageF img = normalize(f);
        for (auto& p : img.pixels) p = clip01(p + p * scale * frame_rng.normal());
        return denormalize(img);
    });
}

FrameSequence shot_noise(const FrameSequence& seq, Severity severity,
                         const SeededRng& rng, Exec exec) {
    const double lambda = severity_params(CorruptionKind::ShotNoise, severity)[0];
    return map_frames(seq, exec, [&](const Frame& f, std::size_t t) {
        SeededRng frame_rng = rng.child(t);
        ImageF img = normalize(f);
        for (auto& p : img.pixels)
            p = clip01(static_cast<double>(frame_rng.poisson(p * lambda)) / lambda);
        return denormalize(img);
    });
}

FrameSequence impulse_noise(const FrameSequence& seq, Severity severity,
                            const SeededRng& rng, Exec exec,
                            double amount_override) {
    const double amount =
        amount_override >= 0.0
            ? amount_override
            : severity_params(CorruptionKind::ImpulseNoise, severity)[0];
    return map_frames(seq, exec, [&](const Frame& f, std::size_t t) {
        SeededRng frame_rng = rng.child(t);
        Frame out = f;
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x)
                if (frame_rng.uniform() < amount) {
                    const std::uint8_t v = frame_rng.uniform() < 0.5 ? 0 : 255;
                    for (int c = 0; c < 3; ++c) out.at(y, x, c) = v;
                }
        return out;
    });
}

FrameSequence defocus_blur(const FrameSequence& seq, Severity severity, Exec exec) {
    const auto& p = severity_params(CorruptionKind::DefocusBlur, severity);
    const int radius = static_cast<int>(p[0]);
    if (seq.height <= 2 * radius || seq.width <= 2 * radius)
        throw FrameTooSmall("frame smaller than defocus kernel support");
    const DiskKernel kernel = make_disk_kernel(radius, p[1]);
    const auto taps = kernel_taps(kernel);
    return map_frames(seq, exec, [&](const Frame& f, std::size_t) {
        return denormalize(convolve_taps(normalize(f), taps));
    });
}

FrameSequence zoom_blur(const FrameSequence& seq, Severity severity, Exec exec) {
    const double zmax = severity_params(CorruptionKind::ZoomBlur, severity)[0];
    std::vector<double> factors;
    for (double z = 1.0; z <= zmax + 1e-9; z += 0.01) factors.push_back(z);
    return map_frames(seq, exec, [&](const Frame& f, std::size_t) {
        const ImageF img = normalize(f);
        ImageF acc(f.height, f.width);
        const double cy = (f.height - 1) / 2.0;
        const double cx = (f.width - 1) / 2.0;
        for (double z : factors)
            for (int y = 0; y < f.height; ++y)
                for (int x = 0; x < f.width; ++x) {
                    const double sy = cy + (y - cy) / z;
                    const double sx = cx + (x - cx) / z;
                    for (int c = 0; c < 3; ++c)
                        acc.at(y, x, c) += sample_bilinear(img, sy, sx, c);
                }
        const double inv = 1.0 / static_cast<double>(factors.size());
        for (auto& v : acc.pixels) v = clip01(v * inv);
        return denormalize(acc);
    });
}

FrameSequence motion_blur_with_angle(const FrameSequence& seq, Severity severity,
                                     double angle_deg, Exec exec) {
    const auto& p = severity_params(CorruptionKind::MotionBlur, severity);
    const int radius = static_cast<int>(p[0]);
    const double sigma = p[1];
    const double theta = angle_deg * M_PI / 180.0;

    // Gaussian-weighted line kernel; collisions from rounding accumulate.
    std::vector<Tap> taps;
    for (int i = -radius; i <= radius; ++i) {
        const int dx = static_cast<int>(round_half_away(i * std::cos(theta)));
        const int dy = static_cast<int>(round_half_away(i * std::sin(theta)));
        const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
        bool merged = false;
        for (auto& t : taps)
            if (t.dy == dy && t.dx == dx) {
                t.w += w;
                merged = true;
                break;
            }
        if (!merged) taps.push_back({dy, dx, w});
    }
    double total = 0.0;
    for (const auto& t : taps) total += t.w;
    for (auto& t : taps) t.w /= total;

    return map_frames(seq, exec, [&](const Frame& f, std::size_t) {
        return denormalize(convolve_taps(normalize(f), taps));
    });
}

FrameSequence motion_blur(const FrameSequence& seq, Severity severity,
                          const SeededRng& rng, Exec exec) {
    SeededRng angle_rng = rng.child(kAngleStream);
    const double angle_deg = angle_rng.uniform(0.0, 180.0);
    return motion_blur_with_angle(seq, severity, angle_deg, exec);
}

FrameSequence zoom_in(const FrameSequence& seq, Severity severity, Exec exec) {
    const double zmax = severity_params(CorruptionKind::ZoomIn, severity)[0];
    const std::size_t count = seq.size();
    return map_frames(seq, exec, [&](const Frame& f, std::size_t t) {
        const double z =
            count < 2 ? zmax
                      : 1.0 + (zmax - 1.0) * static_cast<double>(t) /
                                  static_cast<double>(count - 1);
        if (z == 1.0) return f; // bit-identical first frame
        const ImageF img = normalize(f);
        ImageF out(f.height, f.width);
        const double cy = (f.height - 1) / 2.0;
        const double cx = (f.width - 1) / 2.0;
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                const double sy = cy + (y - cy) / z;
                const double sx = cx + (x - cx) / z;
                for (int c = 0; c < 3; ++c)
                    out.at(y, x, c) = sample_bilinear(img, sy, sx, c);
            }
        return denormalize(out);
    });
}

} // namespace robustgait::digital
