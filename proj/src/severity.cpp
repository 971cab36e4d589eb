#include "robustgait/severity.hpp"

#include <map>

namespace robustgait {

namespace {

std::map<CorruptionKind, SeverityTable> build_tables() {
    std::map<CorruptionKind, SeverityTable> t;
    auto add = [&](CorruptionKind k, std::vector<std::vector<double>> p) {
        t[k] = SeverityTable{k, std::move(p)};
    };
    add(CorruptionKind::GaussianNoise, {{0.08}, {0.12}, {0.18}, {0.26}, {0.38}});
    add(CorruptionKind::ShotNoise, {{250}, {100}, {50}, {30}, {15}});
    add(CorruptionKind::ImpulseNoise, {{0.03}, {0.06}, {0.09}, {0.17}, {0.27}});
    add(CorruptionKind::SpeckleNoise, {{0.15}, {0.2}, {0.25}, {0.3}, {0.35}});
    add(CorruptionKind::DefocusBlur,
        {{3, 0.1}, {4, 0.2}, {6, 0.3}, {8, 0.4}, {10, 0.5}});
    add(CorruptionKind::ZoomBlur, {{1.11}, {1.16}, {1.21}, {1.26}, {1.31}});
    add(CorruptionKind::MotionBlur,
        {{10, 3}, {15, 5}, {15, 8}, {15, 12}, {20, 15}});
    add(CorruptionKind::ZoomIn, {{1.5}, {2.0}, {2.5}, {3.0}, {3.5}});
    // Non-monotone schedule, kept verbatim.
    add(CorruptionKind::Freeze, {{0.40}, {0.20}, {0.10}, {0.05}, {0.10}});
    add(CorruptionKind::Sampling, {{2}, {4}, {8}, {16}, {32}});
    add(CorruptionKind::LowLight, {{1}, {2}, {3}, {4}, {5}});
    add(CorruptionKind::Fog, {{0.49}, {0.59}, {0.69}, {0.79}, {0.89}});
    add(CorruptionKind::Rain,
        {{0.7, 5}, {0.7, 15}, {0.6, 20}, {0.55, 40}, {0.5, 50}});
    add(CorruptionKind::Snow, {{0.05}, {0.1}, {0.15}, {0.2}, {0.25}});
    // Target occluder area as a fraction of the frame, per severity quintile.
    add(CorruptionKind::Occlusion, {{0.05}, {0.10}, {0.18}, {0.28}, {0.40}});
    return t;
}

const std::map<CorruptionKind, SeverityTable>& tables() {
    static const auto t = build_tables();
    return t;
}

} // namespace

const SeverityTable& severity_table(CorruptionKind kind) {
    auto it = tables().find(kind);
    if (it == tables().end())
        throw UnknownCorruption("no severity table for kind");
    return it->second;
}

const std::vector<double>& severity_params(CorruptionKind kind, Severity severity) {
    return severity_table(kind).params.at(severity.level - 1);
}

} // namespace robustgait
