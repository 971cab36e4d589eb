#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "robustgait/digital.hpp"
#include "robustgait/severity.hpp"
#include "test_util.hpp"

using namespace robustgait;
using namespace testutil;

namespace {

double diff_std(const FrameSequence& in, const FrameSequence& out) {
    double sum = 0.0, sum2 = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 0; t < in.size(); ++t)
        for (std::size_t i = 0; i < in.frames[t].pixels.size(); ++i) {
            const double d = (static_cast<double>(out.frames[t].pixels[i]) -
                              static_cast<double>(in.frames[t].pixels[i])) /
                             255.0;
            sum += d;
            sum2 += d * d;
            ++n;
        }
    const double mean = sum / n;
    return std::sqrt(sum2 / n - mean * mean);
}

} // namespace

TEST_CASE("gaussian noise empirical std matches sigma on mid-gray") {
    const auto in = constant_sequence(1, 64, 64, 128);
    const auto out = digital::gaussian_noise(in, Severity(1), SeededRng(3));
    CHECK(diff_std(in, out) > 0.072);
    CHECK(diff_std(in, out) < 0.088);
    CHECK(out.height == in.height);
    CHECK(out.width == in.width);
    CHECK(out.size() == in.size());
}

TEST_CASE("speckle noise scales with the image and fixes black") {
    const auto black = constant_sequence(2, 16, 16, 0);
    CHECK(digital::speckle_noise(black, Severity(3), SeededRng(1)) == black);

    const auto gray = constant_sequence(1, 64, 64, 128);
    const double s = diff_std(gray, digital::speckle_noise(gray, Severity(1), SeededRng(5)));
    const double expected = (128.0 / 255.0) * 0.15;
    CHECK(s > expected * 0.9);
    CHECK(s < expected * 1.1);
}

TEST_CASE("shot noise is mean preserving and fixes black") {
    const auto black = constant_sequence(2, 16, 16, 0);
    CHECK(digital::shot_noise(black, Severity(5), SeededRng(1)) == black);

    const auto gray = constant_sequence(1, 64, 64, 128);
    const auto out = digital::shot_noise(gray, Severity(1), SeededRng(2));
    const double mean = frame_mean(out.frames[0]) / 255.0;
    CHECK(mean > 0.48);
    CHECK(mean < 0.52);
}

TEST_CASE("impulse noise changes about the scheduled fraction of pixels") {
    const auto in = constant_sequence(1, 64, 64, 128);
    const auto out = digital::impulse_noise(in, Severity(1), SeededRng(9));
    std::size_t changed = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            if (out.frames[0].at(y, x, 0) != 128) ++changed;
    const double frac = static_cast<double>(changed) / (64.0 * 64.0);
    CHECK(frac > 0.024);
    CHECK(frac < 0.036);

    SUBCASE("unchanged pixels are bit-identical and values are salt or pepper") {
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x) {
                const auto v = out.frames[0].at(y, x, 0);
                CHECK((v == 128 || v == 0 || v == 255));
            }
    }
}

TEST_CASE("disk kernel is normalized, nonnegative, disk-supported") {
    for (int s = 1; s <= 5; ++s) {
        const auto& p = severity_params(CorruptionKind::DefocusBlur, Severity(s));
        const auto k = digital::make_disk_kernel(static_cast<int>(p[0]), p[1]);
        double sum = 0.0;
        for (double w : k.taps) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("defocus blur fixes constant frames and spreads impulses") {
    const auto flat = constant_sequence(1, 32, 32, 77);
    CHECK(digital::defocus_blur(flat, Severity(2)) == flat);

    FrameSequence impulse = constant_sequence(1, 33, 33, 0);
    for (int c = 0; c < 3; ++c) impulse.frames[0].at(16, 16, c) = 255;
    const auto out = digital::defocus_blur(impulse, Severity(1)); // radius 3
    double mass_in = 0.0, mass_total = 0.0;
    for (int y = 0; y < 33; ++y)
        for (int x = 0; x < 33; ++x) {
            const double v = out.frames[0].at(y, x, 0);
            mass_total += v;
            if ((y - 16) * (y - 16) + (x - 16) * (x - 16) <= 16) mass_in += v;
        }
    CHECK(mass_in / mass_total > 0.99); // spread stays on a radius-3 disk (+soft edge)
    // conserved up to one rounding step per covered pixel
    CHECK(mass_total > 255.0 - 20.0);
    CHECK(mass_total < 255.0 + 20.0);
    CHECK(out.frames[0].at(16, 16, 0) < 255); // actually blurred
}

TEST_CASE("defocus blur rejects frames smaller than the kernel") {
    const auto tiny = constant_sequence(1, 6, 6, 10);
    CHECK_THROWS_AS(digital::defocus_blur(tiny, Severity(1)), FrameTooSmall);
}

TEST_CASE("zoom blur fixes constants and blurs the border more than the center") {
    const auto flat = constant_sequence(1, 20, 20, 200);
    CHECK(digital::zoom_blur(flat, Severity(5)) == flat);

    FrameSequence sq = constant_sequence(1, 64, 64, 0);
    for (int y = 22; y < 42; ++y)
        for (int x = 22; x < 42; ++x)
            for (int c = 0; c < 3; ++c) sq.frames[0].at(y, x, c) = 255;
    const auto out = digital::zoom_blur(sq, Severity(3));
    // the frame-center pixel samples only white at every zoom level
    CHECK(out.frames[0].at(31, 31, 0) == 255);
    // but the square smears outward: pixels just outside its corner pick up
    // white from zoomed samples
    int outside_gain = 0;
    for (int y = 17; y < 22; ++y)
        for (int x = 17; x < 22; ++x) outside_gain += out.frames[0].at(y, x, 0);
    CHECK(outside_gain > 0);
}

TEST_CASE("motion blur with angle zero stays within one row segment") {
    FrameSequence impulse = constant_sequence(1, 41, 41, 0);
    for (int c = 0; c < 3; ++c) impulse.frames[0].at(20, 20, c) = 255;
    const auto out = digital::motion_blur_with_angle(impulse, Severity(1), 0.0);
    for (int y = 0; y < 41; ++y)
        for (int x = 0; x < 41; ++x) {
            if (out.frames[0].at(y, x, 0) == 0) continue;
            CHECK(y == 20);
            CHECK(std::abs(x - 20) <= 10); // severity 1 radius
        }
}

TEST_CASE("motion blur fixes constant frames and shares the angle per sequence") {
    const auto flat = constant_sequence(3, 32, 32, 99);
    CHECK(digital::motion_blur(flat, Severity(4), SeededRng(8)) == flat);

    // identical frames must come out identical (same theta everywhere)
    auto seq = natural_sequence(1, 32, 32);
    seq.frames.push_back(seq.frames[0]);
    const auto out = digital::motion_blur(seq, Severity(2), SeededRng(8));
    CHECK(out.frames[0] == out.frames[1]);
}

TEST_CASE("zoom_in keeps frame zero and scales the last frame geometrically") {
    // Centered 10x10 white square; severity 3 -> final zoom 2.5 -> side ~25.
    FrameSequence seq;
    seq.height = 64;
    seq.width = 64;
    for (int t = 0; t < 8; ++t) {
        Frame f(64, 64, 0);
        for (int y = 27; y < 37; ++y)
            for (int x = 27; x < 37; ++x)
                for (int c = 0; c < 3; ++c) f.at(y, x, c) = 255;
        seq.frames.push_back(std::move(f));
    }
    const auto out = digital::zoom_in(seq, Severity(3));
    CHECK(out.frames[0] == seq.frames[0]); // z = 1 exactly

    int side = 0;
    for (int x = 0; x < 64; ++x)
        if (out.frames[7].at(31, x, 0) > 127) ++side;
    CHECK(side >= 23);
    CHECK(side <= 27);
}

TEST_CASE("single-frame zoom_in uses the full zoom factor") {
    auto seq = natural_sequence(1, 32, 32);
    const auto full = digital::zoom_in(seq, Severity(5));
    CHECK(full.frames[0] != seq.frames[0]);
}

TEST_CASE("noise severity is monotone in MSE on a natural frame") {
    const auto in = natural_sequence(1, 48, 48);
    for (auto kind : {CorruptionKind::GaussianNoise, CorruptionKind::SpeckleNoise,
                      CorruptionKind::ShotNoise, CorruptionKind::ImpulseNoise}) {
        double prev = -1.0;
        for (int s = 1; s <= 5; ++s) {
            FrameSequence out;
            switch (kind) {
            case CorruptionKind::GaussianNoise:
                out = digital::gaussian_noise(in, Severity(s), SeededRng(21));
                break;
            case CorruptionKind::SpeckleNoise:
                out = digital::speckle_noise(in, Severity(s), SeededRng(21));
                break;
            case CorruptionKind::ShotNoise:
                out = digital::shot_noise(in, Severity(s), SeededRng(21));
                break;
            default:
                out = digital::impulse_noise(in, Severity(s), SeededRng(21));
                break;
            }
            const double m = mse(in, out);
            CHECK(m > prev);
            prev = m;
        }
    }
}

TEST_CASE("kernels are deterministic under equal seeds") {
    const auto in = natural_sequence(4, 32, 32);
    CHECK(digital::gaussian_noise(in, Severity(3), SeededRng(42)) ==
          digital::gaussian_noise(in, Severity(3), SeededRng(42)));
    CHECK(digital::motion_blur(in, Severity(3), SeededRng(42)) ==
          digital::motion_blur(in, Severity(3), SeededRng(42)));
    CHECK(digital::shot_noise(in, Severity(3), SeededRng(42)) !=
          digital::shot_noise(in, Severity(3), SeededRng(43)));
}

TEST_CASE("impulse noise accepts a user override amount") {
    const auto in = constant_sequence(1, 64, 64, 128);
    const auto out =
        digital::impulse_noise(in, Severity(1), SeededRng(4), Exec::Parallel, 0.5);
    std::size_t changed = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            if (out.frames[0].at(y, x, 0) != 128) ++changed;
    CHECK(static_cast<double>(changed) / 4096.0 > 0.4);
}
