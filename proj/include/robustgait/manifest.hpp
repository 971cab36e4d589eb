#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robustgait/types.hpp"

namespace robustgait {

struct CorruptionTag {
    std::string kind;
    int severity = 1;
    std::uint64_t seed = 0;
};

/// One line of a line-delimited JSON manifest.
struct ManifestRecord {
    std::string sequence_id;
    std::string identity;
    std::string condition;
    std::string view;
    std::string path;
    std::optional<CorruptionTag> corruption;
};

std::vector<ManifestRecord> read_manifest(const std::string& path);
void write_manifest(const std::vector<ManifestRecord>& records,
                    const std::string& path);
std::string manifest_record_to_json(const ManifestRecord& rec);
ManifestRecord manifest_record_from_json(const std::string& line);

} // namespace robustgait
