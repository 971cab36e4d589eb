#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robustgait/rng.hpp"
#include "robustgait/types.hpp"

namespace robustgait::occlusion {

struct MaskEntry {
    std::string mask_id;
    BinaryMask mask;
    std::size_t area = 0;
    std::optional<Frame> texture; // same dims as mask when present
};

/// Occluder masks sorted ascending by area; quintiles index severity.
struct MaskPack {
    std::vector<MaskEntry> entries;

    /// Sorts by (area, mask_id) and validates areas against mask pixels.
    void finalize();
};

/// The severity-th quintile of the area-sorted pack (1 = smallest areas).
/// Returned as [first, last) indices into pack.entries.
std::pair<std::size_t, std::size_t> severity_group(const MaskPack& pack,
                                                   Severity severity);

struct OcclusionResult {
    FrameSequence sequence;
    BinaryMask placed_mask; // frame-sized; the same occluder on every frame
    std::string mask_id;
};

/// Draws one entry from the severity group, scales it so its bounding box
/// covers the severity's target fraction of the frame, anchors it at a seeded
/// position (>= 50% of the bounding box kept inside), and composites it
/// identically onto every frame. Pixels outside the returned mask are
/// untouched.
OcclusionResult occlude(const FrameSequence& seq, const MaskPack& pack,
                        Severity severity, const SeededRng& rng);

} // namespace robustgait::occlusion
