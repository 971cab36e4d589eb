#pragma once

#include <map>
#include <string>
#include <vector>

#include "robustgait/manifest.hpp"
#include "robustgait/rng.hpp"
#include "robustgait/types.hpp"

namespace robustgait::protocols {

struct ProtocolSpec {
    std::string dataset; // casia_b, ccpg, sustech1k, mevid, custom
    std::vector<std::string> gallery_conditions;
    std::vector<std::string> probe_conditions;
};

/// Built-in probe/gallery condition vocabularies for the supported datasets.
ProtocolSpec builtin_protocol(const std::string& name);
ProtocolSpec protocol_from_json_file(const std::string& path);

struct SplitResult {
    std::vector<ManifestRecord> gallery;
    std::vector<ManifestRecord> probe;
    std::size_t excluded = 0; // records matching neither condition list
};

/// Partitions records by condition membership. Unknown conditions are
/// excluded and counted, not an error.
SplitResult split(const std::vector<ManifestRecord>& records,
                  const ProtocolSpec& spec);

struct SeverityDistribution {
    // severity level -> probability; defaults to the noisy-gallery 0.6/0.3/0.1.
    std::map<int, double> probabilities = {{1, 0.6}, {2, 0.3}, {3, 0.1}};

    void validate() const;
};

/// Assigns each gallery sequence one corruption (kind uniform over `kinds`,
/// severity from `dist`) via seeded draws. Stable across runs for equal seeds.
std::vector<ManifestRecord> build_noisy_gallery(
    const std::vector<ManifestRecord>& gallery,
    const std::vector<CorruptionKind>& kinds, const SeverityDistribution& dist,
    std::uint64_t seed);

struct MixRatio {
    double clean_fraction = 1.0;
    double noisy_fraction = 0.0;

    void validate() const;
};

/// Replaces round(noisy_fraction * N) clean sequences with their corrupted
/// counterparts (matched by sequence_id), balancing replacements per identity.
std::vector<ManifestRecord> build_training_mix(
    const std::vector<ManifestRecord>& clean,
    const std::vector<ManifestRecord>& noisy, const MixRatio& ratio,
    std::uint64_t seed);

/// Default "seen" corruption set for noise-aware training: one per family
/// plus one extra digital kind. Configurable by callers; this is only a
/// documented default.
const std::vector<CorruptionKind>& default_seen_corruptions();

} // namespace robustgait::protocols
