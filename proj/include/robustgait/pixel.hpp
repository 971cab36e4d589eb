#pragma once

#include <cmath>
#include <vector>

#include "robustgait/types.hpp"

namespace robustgait {

/// Real-valued working image in [0,1], interleaved RGB like Frame.
struct ImageF {
    int height = 0;
    int width = 0;
    std::vector<double> pixels;

    ImageF() = default;
    ImageF(int h, int w, double fill = 0.0)
        : height(h), width(w), pixels(static_cast<std::size_t>(h) * w * 3, fill) {}

    double& at(int y, int x, int c) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    double at(int y, int x, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
};

inline double clip01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

/// Round half away from zero; fixed convention for bit-exact determinism.
inline double round_half_away(double v) {
    return v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5);
}

inline ImageF normalize(const Frame& f) {
    ImageF out(f.height, f.width);
    for (std::size_t i = 0; i < f.pixels.size(); ++i)
        out.pixels[i] = f.pixels[i] / 255.0;
    return out;
}

/// Clips to [0,1] then scales to [0,255], rounding half away from zero.
inline Frame denormalize(const ImageF& img) {
    Frame out(img.height, img.width);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] =
            static_cast<std::uint8_t>(round_half_away(clip01(img.pixels[i]) * 255.0));
    return out;
}

/// Bilinear sample with edge clamping, in continuous (y, x) coordinates.
inline double sample_bilinear(const ImageF& img, double y, double x, int c) {
    const auto clampi = [](int v, int lo, int hi) {
        return v < lo ? lo : (v > hi ? hi : v);
    };
    const int y0 = clampi(static_cast<int>(std::floor(y)), 0, img.height - 1);
    const int x0 = clampi(static_cast<int>(std::floor(x)), 0, img.width - 1);
    const int y1 = clampi(y0 + 1, 0, img.height - 1);
    const int x1 = clampi(x0 + 1, 0, img.width - 1);
    const double fy = clip01(y - y0);
    const double fx = clip01(x - x0);
    const double top = img.at(y0, x0, c) * (1 - fx) + img.at(y0, x1, c) * fx;
    const double bot = img.at(y1, x0, c) * (1 - fx) + img.at(y1, x1, c) * fx;
    return top * (1 - fy) + bot * fy;
}

/// Reflect index into [0, n) (reflect-101 style without edge repeat).
inline int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i = std::abs(i) % period;
    return i < n ? i : period - i;
}

} // namespace robustgait
