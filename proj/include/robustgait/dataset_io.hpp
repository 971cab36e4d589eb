#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "robustgait/metrics.hpp"
#include "robustgait/occlusion.hpp"
#include "robustgait/types.hpp"

namespace robustgait::io {

inline constexpr const char* kEngineVersion = "robustgait-0.1.0";

/// FNV-1a over dimensions and raw pixel bytes, hex encoded.
std::string sequence_digest(const FrameSequence& seq);

/// Everything needed to regenerate a corrupted output bit-exactly.
struct CorruptionManifest {
    std::string source_id;
    std::string kind;
    int severity = 1;
    std::uint64_t seed = 0;
    std::string engine_version = kEngineVersion;
    std::map<std::string, double> resolved_params;
    std::string output_digest;

    std::string to_json() const;
    static CorruptionManifest from_json_file(const std::filesystem::path& path);
};

/// Loads a directory of PNG frames in lexicographic filename order.
/// Grayscale images are expanded to RGB.
FrameSequence load_sequence(const std::filesystem::path& dir);

/// Writes frames as frame_NNNNNN.png plus manifest.json when given.
/// Atomic: stages into a temp dir next to `dir`, then renames.
void save_sequence(const FrameSequence& seq, const std::filesystem::path& dir,
                   const CorruptionManifest* manifest = nullptr);

Frame load_frame_png(const std::filesystem::path& path);
void save_frame_png(const Frame& frame, const std::filesystem::path& path);
BinaryMask load_mask_png(const std::filesystem::path& path);
void save_mask_png(const BinaryMask& mask, const std::filesystem::path& path);

/// Embedding files: text format has header "id,condition,view,dim" and one
/// record per line; the binary variant is little-endian with magic "RGEB".
/// load_embeddings sniffs the format.
std::vector<metrics::EmbeddingRecord> load_embeddings(const std::filesystem::path& path);
void save_embeddings_text(const std::vector<metrics::EmbeddingRecord>& records,
                          const std::filesystem::path& path);
void save_embeddings_binary(const std::vector<metrics::EmbeddingRecord>& records,
                            const std::filesystem::path& path);

/// Mask pack directory: index.json listing (mask_id, mask file, area,
/// optional texture file) plus the mask/texture PNGs.
occlusion::MaskPack load_mask_pack(const std::filesystem::path& dir);
void save_mask_pack(const occlusion::MaskPack& pack, const std::filesystem::path& dir);

/// Rasterizes a COCO-style polygon annotation ([x0,y0,x1,y1,...]) into a
/// mask; utility for converting external annotation packs.
BinaryMask polygon_to_mask(const std::vector<double>& polygon, int height, int width);

} // namespace robustgait::io
