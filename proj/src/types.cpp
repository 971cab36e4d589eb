#include "robustgait/types.hpp"

#include <array>

namespace robustgait {

const std::vector<CorruptionKind>& all_corruption_kinds() {
    static const std::vector<CorruptionKind> kinds = {
        CorruptionKind::GaussianNoise, CorruptionKind::ShotNoise,
        CorruptionKind::ImpulseNoise,  CorruptionKind::SpeckleNoise,
        CorruptionKind::DefocusBlur,   CorruptionKind::ZoomBlur,
        CorruptionKind::MotionBlur,    CorruptionKind::ZoomIn,
        CorruptionKind::Freeze,        CorruptionKind::Sampling,
        CorruptionKind::LowLight,      CorruptionKind::Fog,
        CorruptionKind::Rain,          CorruptionKind::Snow,
        CorruptionKind::Occlusion,
    };
    return kinds;
}

CorruptionFamily family_of(CorruptionKind kind) {
    switch (kind) {
    case CorruptionKind::GaussianNoise:
    case CorruptionKind::ShotNoise:
    case CorruptionKind::ImpulseNoise:
    case CorruptionKind::SpeckleNoise:
    case CorruptionKind::DefocusBlur:
    case CorruptionKind::ZoomBlur:
    case CorruptionKind::MotionBlur:
    case CorruptionKind::ZoomIn:
        return CorruptionFamily::Digital;
    case CorruptionKind::Freeze:
    case CorruptionKind::Sampling:
        return CorruptionFamily::Temporal;
    case CorruptionKind::LowLight:
    case CorruptionKind::Fog:
    case CorruptionKind::Rain:
    case CorruptionKind::Snow:
        return CorruptionFamily::Environmental;
    case CorruptionKind::Occlusion:
        return CorruptionFamily::Occlusion;
    }
    throw UnknownCorruption("unknown corruption kind");
}

std::string to_string(CorruptionKind kind) {
    switch (kind) {
    case CorruptionKind::GaussianNoise: return "gaussian_noise";
    case CorruptionKind::ShotNoise: return "shot_noise";
    case CorruptionKind::ImpulseNoise: return "impulse_noise";
    case CorruptionKind::SpeckleNoise: return "speckle_noise";
    case CorruptionKind::DefocusBlur: return "defocus_blur";
    case CorruptionKind::ZoomBlur: return "zoom_blur";
    case CorruptionKind::MotionBlur: return "motion_blur";
    case CorruptionKind::ZoomIn: return "zoom_in";
    case CorruptionKind::Freeze: return "freeze";
    case CorruptionKind::Sampling: return "sampling";
    case CorruptionKind::LowLight: return "low_light";
    case CorruptionKind::Fog: return "fog";
    case CorruptionKind::Rain: return "rain";
    case CorruptionKind::Snow: return "snow";
    case CorruptionKind::Occlusion: return "occlusion";
    }
    throw UnknownCorruption("unknown corruption kind");
}

std::string to_string(CorruptionFamily family) {
    switch (family) {
    case CorruptionFamily::Digital: return "digital";
    case CorruptionFamily::Temporal: return "temporal";
    case CorruptionFamily::Environmental: return "environmental";
    case CorruptionFamily::Occlusion: return "occlusion";
    }
    throw UnknownCorruption("unknown corruption family");
}

CorruptionKind kind_from_string(const std::string& name) {
    for (auto k : all_corruption_kinds())
        if (to_string(k) == name) return k;
    throw UnknownCorruption("unknown corruption kind: " + name);
}

} // namespace robustgait
