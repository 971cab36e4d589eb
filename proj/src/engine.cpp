#include "robustgait/engine.hpp"

#include "robustgait/digital.hpp"
#include "robustgait/environmental.hpp"
#include "robustgait/severity.hpp"
#include "robustgait/temporal.hpp"

namespace robustgait {

CorruptionOutput apply_corruption(const FrameSequence& seq, const CorruptionSpec& spec,
                                  const occlusion::MaskPack* pack, Exec exec) {
    const SeededRng rng(spec.seed);
    const Severity sev = spec.severity;
    CorruptionOutput out;

    const auto& sched = severity_params(spec.kind, sev);
    switch (spec.kind) {
    case CorruptionKind::GaussianNoise:
        out.sequence = digital::gaussian_noise(seq, sev, rng, exec);
        out.resolved_params = {{"sigma", sched[0]}};
        break;
    case CorruptionKind::SpeckleNoise:
        out.sequence = digital::speckle_noise(seq, sev, rng, exec);
        out.resolved_params = {{"scale", sched[0]}};
        break;
    case CorruptionKind::ShotNoise:
        out.sequence = digital::shot_noise(seq, sev, rng, exec);
        out.resolved_params = {{"lambda", sched[0]}};
        break;
    case CorruptionKind::ImpulseNoise:
        out.sequence = digital::impulse_noise(seq, sev, rng, exec);
        out.resolved_params = {{"amount", sched[0]}};
        break;
    case CorruptionKind::DefocusBlur:
        out.sequence = digital::defocus_blur(seq, sev, exec);
        out.resolved_params = {{"radius", sched[0]}, {"alias_sigma", sched[1]}};
        break;
    case CorruptionKind::ZoomBlur:
        out.sequence = digital::zoom_blur(seq, sev, exec);
        out.resolved_params = {{"zoom_max", sched[0]}, {"zoom_step", 0.01}};
        break;
    case CorruptionKind::MotionBlur:
        out.sequence = digital::motion_blur(seq, sev, rng, exec);
        out.resolved_params = {{"radius", sched[0]}, {"sigma", sched[1]}};
        break;
    case CorruptionKind::ZoomIn:
        out.sequence = digital::zoom_in(seq, sev, exec);
        out.resolved_params = {{"zoom_max", sched[0]}};
        break;
    case CorruptionKind::Freeze:
        out.sequence = temporal::freeze(seq, sev, rng);
        out.resolved_params = {{"proportion", sched[0]}};
        break;
    case CorruptionKind::Sampling:
        out.sequence = temporal::sampling(seq, sev);
        out.resolved_params = {{"rate", sched[0]}};
        break;
    case CorruptionKind::LowLight:
        out.sequence = environmental::low_light(seq, sev, exec);
        out.resolved_params = {{"strength", sched[0]}, {"vignette_slope", 0.18}};
        break;
    case CorruptionKind::Fog:
        out.sequence = environmental::fog(seq, sev, rng, exec);
        out.resolved_params = {{"density", sched[0]},
                               {"alpha", 0.08 * sched[0] + 0.1}};
        break;
    case CorruptionKind::Rain:
        out.sequence = environmental::rain(seq, sev, rng, exec);
        out.resolved_params = {{"brightness", sched[0]},
                               {"drop_length", sched[1]},
                               {"slant_deg", 10.0},
                               {"streak_density", 0.002}};
        break;
    case CorruptionKind::Snow:
        out.sequence = environmental::snow(seq, sev, rng, exec);
        out.resolved_params = {{"coefficient", sched[0]}};
        break;
    case CorruptionKind::Occlusion: {
        if (!pack)
            throw InvalidConfig("occlusion corruption needs a mask pack");
        auto res = occlusion::occlude(seq, *pack, sev, rng);
        out.sequence = std::move(res.sequence);
        out.occluder_mask = std::move(res.placed_mask);
        out.resolved_params = {{"area_fraction", sched[0]}};
        break;
    }
    }
    return out;
}

} // namespace robustgait
