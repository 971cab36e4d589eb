#pragma once

#include <map>
#include <optional>

#include "robustgait/exec.hpp"
#include "robustgait/occlusion.hpp"
#include "robustgait/types.hpp"

namespace robustgait {

struct CorruptionOutput {
    FrameSequence sequence;
    std::optional<BinaryMask> occluder_mask; // occlusion only
    // Every resolved numeric parameter, including decided constants; goes
    // into the corruption manifest for provenance.
    std::map<std::string, double> resolved_params;
};

/// Applies one corruption spec to a sequence. Occlusion needs a mask pack.
CorruptionOutput apply_corruption(const FrameSequence& seq, const CorruptionSpec& spec,
                                  const occlusion::MaskPack* pack = nullptr,
                                  Exec exec = Exec::Parallel);

} // namespace robustgait
