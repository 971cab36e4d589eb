#include "robustgait/manifest.hpp"

#include <fstream>

#include <json.hpp>

namespace robustgait {

using nlohmann::json;

std::string manifest_record_to_json(const ManifestRecord& rec) {
    json j{{"sequence_id", rec.sequence_id},
           {"identity", rec.identity},
           {"condition", rec.condition},
           {"view", rec.view},
           {"path", rec.path}};
    if (rec.corruption)
        j["corruption"] = {{"kind", rec.corruption->kind},
                           {"severity", rec.corruption->severity},
                           {"seed", rec.corruption->seed}};
    return j.dump();
}

ManifestRecord manifest_record_from_json(const std::string& line) {
    json j = json::parse(line);
    ManifestRecord rec;
    rec.sequence_id = j.at("sequence_id").get<std::string>();
    rec.identity = j.at("identity").get<std::string>();
    rec.condition = j.at("condition").get<std::string>();
    rec.view = j.value("view", std::string{});
    rec.path = j.value("path", std::string{});
    if (j.contains("corruption")) {
        CorruptionTag tag;
        tag.kind = j["corruption"].at("kind").get<std::string>();
        tag.severity = j["corruption"].at("severity").get<int>();
        tag.seed = j["corruption"].value("seed", std::uint64_t{0});
        rec.corruption = tag;
    }
    return rec;
}

std::vector<ManifestRecord> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    std::vector<ManifestRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(manifest_record_from_json(line));
    }
    return records;
}

void write_manifest(const std::vector<ManifestRecord>& records,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest: " + path);
    for (const auto& rec : records) out << manifest_record_to_json(rec) << '\n';
}

} // namespace robustgait
