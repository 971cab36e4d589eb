#include "robustgait/occlusion.hpp"

#include <algorithm>
#include <cmath>

#include "robustgait/pixel.hpp"
#include "robustgait/severity.hpp"

namespace robustgait::occlusion {

void MaskPack::finalize() {
    for (auto& e : entries) {
        const std::size_t actual = e.mask.area();
        if (actual == 0)
            throw InvalidConfig("occluder mask '" + e.mask_id + "' is empty");
        if (e.area == 0) e.area = actual;
        if (e.area != actual)
            throw InvalidConfig("mask '" + e.mask_id + "' area mismatch: index says " +
                                std::to_string(e.area) + ", pixels say " +
                                std::to_string(actual));
        if (e.texture &&
            (e.texture->height != e.mask.height || e.texture->width != e.mask.width))
            throw DimMismatch("texture dimensions differ from mask '" + e.mask_id + "'");
    }
    std::sort(entries.begin(), entries.end(), [](const MaskEntry& a, const MaskEntry& b) {
        return a.area != b.area ? a.area < b.area : a.mask_id < b.mask_id;
    });
}

std::pair<std::size_t, std::size_t> severity_group(const MaskPack& pack,
                                                   Severity severity) {
    const std::size_t n = pack.entries.size();
    if (n < 5)
        throw PackTooSmall("mask pack needs >= 5 entries, has " + std::to_string(n));
    const std::size_t lo = (severity.level - 1) * n / 5;
    const std::size_t hi = severity.level * n / 5;
    return {lo, hi};
}

OcclusionResult occlude(const FrameSequence& seq, const MaskPack& pack,
                        Severity severity, const SeededRng& rng) {
    seq.validate();
    const auto [lo, hi] = severity_group(pack, severity);
    SeededRng draw = rng.child(0);
    const std::size_t pick = lo + draw.uniform_index(hi - lo);
    const MaskEntry& entry = pack.entries[pick];

    // Bounding box of the source mask.
    int y0 = entry.mask.height, y1 = -1, x0 = entry.mask.width, x1 = -1;
    for (int y = 0; y < entry.mask.height; ++y)
        for (int x = 0; x < entry.mask.width; ++x)
            if (entry.mask.at(y, x)) {
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
            }
    const int bh = y1 - y0 + 1;
    const int bw = x1 - x0 + 1;

    // Scale so the placed bounding box covers the severity's target fraction
    // of the frame area.
    const double frac = severity_params(CorruptionKind::Occlusion, severity)[0];
    const double scale =
        std::sqrt(frac * seq.height * seq.width / (static_cast<double>(bh) * bw));
    const int sh = std::max(1, static_cast<int>(round_half_away(bh * scale)));
    const int sw = std::max(1, static_cast<int>(round_half_away(bw * scale)));

    // Anchor keeps at least half of the box inside the frame on each axis.
    const int ay_lo = -sh / 2, ay_hi = seq.height - sh + sh / 2;
    const int ax_lo = -sw / 2, ax_hi = seq.width - sw + sw / 2;
    const int ay = ay_lo + static_cast<int>(draw.uniform_index(
                               static_cast<std::uint64_t>(ay_hi - ay_lo + 1)));
    const int ax = ax_lo + static_cast<int>(draw.uniform_index(
                               static_cast<std::uint64_t>(ax_hi - ax_lo + 1)));

    BinaryMask placed(seq.height, seq.width, 0);
    Frame fill(seq.height, seq.width, 128); // flat mid-gray without texture
    for (int y = std::max(0, ay); y < std::min(seq.height, ay + sh); ++y)
        for (int x = std::max(0, ax); x < std::min(seq.width, ax + sw); ++x) {
            // Nearest-neighbor lookup into the source mask bounding box.
            const int my = y0 + std::min(bh - 1, (y - ay) * bh / sh);
            const int mx = x0 + std::min(bw - 1, (x - ax) * bw / sw);
            if (!entry.mask.at(my, mx)) continue;
            placed.at(y, x) = 1;
            if (entry.texture)
                for (int c = 0; c < 3; ++c)
                    fill.at(y, x, c) = entry.texture->at(my, mx, c);
        }

    FrameSequence out = seq;
    for (auto& frame : out.frames)
        for (int y = 0; y < seq.height; ++y)
            for (int x = 0; x < seq.width; ++x)
                if (placed.at(y, x))
                    for (int c = 0; c < 3; ++c) frame.at(y, x, c) = fill.at(y, x, c);
    return {std::move(out), std::move(placed), entry.mask_id};
}

} // namespace robustgait::occlusion
