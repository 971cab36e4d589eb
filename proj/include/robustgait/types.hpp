#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace robustgait {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownCorruption : Error { using Error::Error; };
struct FrameTooSmall : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct EmptyGallery : Error { using Error::Error; };
struct EmptySequence : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct PackTooSmall : Error { using Error::Error; };
struct InvalidBaseline : Error { using Error::Error; };
struct EmptySplit : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct MissingCounterpart : Error { using Error::Error; };
struct BatchTooSmall : Error { using Error::Error; };
struct InvalidLabel : Error { using Error::Error; };
struct NoValidTriplet : Error { using Error::Error; };
struct InvalidLoss : Error { using Error::Error; };

/// One RGB frame, interleaved row-major, 8-bit per channel.
struct Frame {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> pixels; // size == height * width * 3

    Frame() = default;
    Frame(int h, int w, std::uint8_t fill = 0)
        : height(h), width(w), pixels(static_cast<std::size_t>(h) * w * 3, fill) {}

    std::uint8_t& at(int y, int x, int c) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int y, int x, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    bool operator==(const Frame&) const = default;
};

/// Ordered frames of uniform dimensions; the unit every corruption transforms.
struct FrameSequence {
    std::vector<Frame> frames;
    int height = 0;
    int width = 0;
    std::string source_id;

    std::size_t size() const { return frames.size(); }
    bool operator==(const FrameSequence&) const = default;

    void validate() const {
        if (frames.empty())
            throw EmptySequence("frame sequence is empty");
        for (const auto& f : frames)
            if (f.height != height || f.width != width)
                throw DimMismatch("frame dimensions differ within sequence");
    }
};

/// Per-pixel {0,1} mask.
struct BinaryMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> pixels; // 0 or 1

    BinaryMask() = default;
    BinaryMask(int h, int w, std::uint8_t fill = 0)
        : height(h), width(w), pixels(static_cast<std::size_t>(h) * w, fill) {}

    std::uint8_t& at(int y, int x) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int y, int x) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t area() const {
        std::size_t n = 0;
        for (auto p : pixels) n += (p != 0);
        return n;
    }
    bool operator==(const BinaryMask&) const = default;
};

struct Severity {
    int level = 1; // 1 (mildest) .. 5 (most severe)

    explicit Severity(int lvl) : level(lvl) {
        if (lvl < 1 || lvl > 5)
            throw InvalidConfig("severity level must be in 1..5, got " + std::to_string(lvl));
    }
};

enum class CorruptionFamily { Digital, Temporal, Environmental, Occlusion };

enum class CorruptionKind {
    GaussianNoise,
    ShotNoise,
    ImpulseNoise,
    SpeckleNoise,
    DefocusBlur,
    ZoomBlur,
    MotionBlur,
    ZoomIn,
    Freeze,
    Sampling,
    LowLight,
    Fog,
    Rain,
    Snow,
    Occlusion,
};

inline constexpr int kNumCorruptionKinds = 15;

const std::vector<CorruptionKind>& all_corruption_kinds();
CorruptionFamily family_of(CorruptionKind kind);
std::string to_string(CorruptionKind kind);
std::string to_string(CorruptionFamily family);
CorruptionKind kind_from_string(const std::string& name);

/// (family, kind, severity, seed) fully determines a corruption application.
struct CorruptionSpec {
    CorruptionKind kind;
    Severity severity;
    std::uint64_t seed = 0;

    CorruptionFamily family() const { return family_of(kind); }
};

} // namespace robustgait
