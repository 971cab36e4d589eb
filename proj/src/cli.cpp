#include "robustgait/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "robustgait/dataset_io.hpp"
#include "robustgait/engine.hpp"
#include "robustgait/metrics.hpp"
#include "robustgait/protocols.hpp"
#include "robustgait/rng.hpp"
#include "robustgait/severity.hpp"

namespace robustgait::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t string_seed(std::uint64_t root, const std::string& tag) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::uint64_t sm = root ^ h;
    return splitmix64(sm);
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ROBUSTGAIT_WORKERS"))
        if (int n = std::atoi(env); n > 0) return n;
    return 0;
}

struct SequenceRef {
    fs::path dir;
    std::string rel; // identity/condition/view
};

std::vector<SequenceRef> find_sequences(const fs::path& root) {
    std::vector<SequenceRef> out;
    if (!fs::is_directory(root)) return out;
    for (const auto& id : fs::directory_iterator(root)) {
        if (!id.is_directory()) continue;
        for (const auto& cond : fs::directory_iterator(id.path())) {
            if (!cond.is_directory()) continue;
            for (const auto& view : fs::directory_iterator(cond.path())) {
                if (!view.is_directory()) continue;
                out.push_back({view.path(), id.path().filename().string() + "/" +
                                                cond.path().filename().string() + "/" +
                                                view.path().filename().string()});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SequenceRef& a, const SequenceRef& b) { return a.rel < b.rel; });
    return out;
}

protocols::ProtocolSpec resolve_protocol(const std::string& name,
                                         const std::vector<metrics::EmbeddingRecord>& all) {
    if (name == "casia_b" || name == "ccpg" || name == "sustech1k")
        return protocols::builtin_protocol(name);
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
        return protocols::protocol_from_json_file(name);
    if (name == "custom") {
        // Every observed condition is both gallery and probe; suits synthetic
        // embedding sets that carry their own split semantics.
        std::set<std::string> conditions;
        for (const auto& r : all) conditions.insert(r.condition);
        protocols::ProtocolSpec spec;
        spec.dataset = "custom";
        spec.gallery_conditions.assign(conditions.begin(), conditions.end());
        spec.probe_conditions = spec.gallery_conditions;
        return spec;
    }
    throw InvalidConfig("unknown protocol: " + name);
}

struct MetricRow {
    double rank1 = 0.0;
    double map = 0.0;
    std::map<int, double> topk;
};

MetricRow compute_metrics(const std::vector<metrics::EmbeddingRecord>& probes,
                          const std::vector<metrics::EmbeddingRecord>& gallery,
                          metrics::Distance dist, const std::vector<int>& ks) {
    MetricRow row;
    row.rank1 = metrics::rank_k_accuracy(probes, gallery, 1, dist);
    row.map = metrics::mean_average_precision(probes, gallery, dist);
    for (int k : ks) row.topk[k] = metrics::rank_k_accuracy(probes, gallery, k, dist);
    return row;
}

} // namespace

int cmd_corrupt(const CorruptOptions& opts) {
    std::vector<CorruptionKind> kinds;
    try {
        if (opts.kinds.empty() ||
            (opts.kinds.size() == 1 && opts.kinds.front() == "all"))
            kinds = all_corruption_kinds();
        else
            for (const auto& name : opts.kinds) kinds.push_back(kind_from_string(name));
        if (kinds.empty()) throw InvalidConfig("no corruption kinds selected");
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::vector<int> severities = opts.severities;
    if (severities.empty()) severities = {1, 2, 3, 4, 5};
    for (int s : severities)
        if (s < 1 || s > 5) {
            std::cerr << "config error: severity out of range: " << s << "\n";
            return 2;
        }

    const bool wants_occlusion =
        std::count(kinds.begin(), kinds.end(), CorruptionKind::Occlusion) > 0;
    occlusion::MaskPack pack;
    if (wants_occlusion) {
        if (opts.mask_pack_dir.empty()) {
            std::cerr << "config error: occlusion requested without a mask pack\n";
            return 2;
        }
        try {
            pack = io::load_mask_pack(opts.mask_pack_dir);
        } catch (const Error& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
    }

    const auto sequences = find_sequences(opts.input_root);
    if (sequences.empty()) {
        std::cerr << "config error: no sequences under " << opts.input_root << "\n";
        return 2;
    }
    set_workers(resolve_workers(opts.workers));

    struct Task {
        std::size_t seq_idx;
        CorruptionKind kind;
        int severity;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < sequences.size(); ++i)
        for (auto k : kinds)
            for (int s : severities) tasks.push_back({i, k, s});

    std::mutex err_mutex;
    std::vector<std::string> failures;
    std::size_t done = 0;

    const long long n = static_cast<long long>(tasks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long ti = 0; ti < n; ++ti) {
        const Task& task = tasks[static_cast<std::size_t>(ti)];
        const SequenceRef& ref = sequences[task.seq_idx];
        const std::string variant =
            to_string(task.kind) + "_s" + std::to_string(task.severity);
        try {
            FrameSequence seq = io::load_sequence(ref.dir);
            seq.source_id = ref.rel;
            CorruptionSpec spec{task.kind, Severity(task.severity),
                                string_seed(opts.seed, ref.rel + "|" + variant)};
            // Frame loops run serially inside each task; the task pool itself
            // is the parallel axis, and seeds are task-local, so worker count
            // cannot change any output.
            auto out = apply_corruption(seq, spec, wants_occlusion ? &pack : nullptr,
                                        Exec::Serial);
            io::CorruptionManifest manifest;
            manifest.source_id = ref.rel;
            manifest.kind = to_string(task.kind);
            manifest.severity = task.severity;
            manifest.seed = spec.seed;
            manifest.resolved_params = out.resolved_params;
            manifest.output_digest = io::sequence_digest(out.sequence);
            io::save_sequence(out.sequence, fs::path(opts.output_root) / variant / ref.rel,
                              &manifest);
            if (out.occluder_mask)
                io::save_mask_png(*out.occluder_mask,
                                  fs::path(opts.output_root) / variant / ref.rel /
                                      "occluder_mask.png");
            std::lock_guard<std::mutex> lock(err_mutex);
            ++done;
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(err_mutex);
            failures.push_back(ref.rel + " [" + variant + "]: " + e.what());
        }
    }

    std::cout << "corrupt: " << done << " sequences written, " << failures.size()
              << " failed\n";
    for (const auto& f : failures) std::cerr << "  failed: " << f << "\n";
    return failures.empty() ? 0 : 1;
}

int cmd_evaluate(const EvaluateOptions& opts) {
    try {
        auto gallery_all = io::load_embeddings(opts.gallery_file);
        auto clean_probe_all = io::load_embeddings(opts.clean_probe_file);
        const bool noisy_gallery = !opts.noisy_gallery_file.empty();
        if (noisy_gallery) gallery_all = io::load_embeddings(opts.noisy_gallery_file);

        const auto dist = metrics::distance_from_string(opts.distance);
        const auto spec = resolve_protocol(opts.protocol, clean_probe_all);
        const std::set<std::string> probe_conditions(spec.probe_conditions.begin(),
                                                     spec.probe_conditions.end());
        const std::set<std::string> gallery_conditions(spec.gallery_conditions.begin(),
                                                       spec.gallery_conditions.end());

        auto filter = [](const std::vector<metrics::EmbeddingRecord>& records,
                         const std::set<std::string>& conditions) {
            std::vector<metrics::EmbeddingRecord> out;
            for (const auto& r : records)
                if (conditions.count(r.condition)) out.push_back(r);
            return out;
        };
        const auto gallery = filter(gallery_all, gallery_conditions);
        const auto clean_probe = filter(clean_probe_all, probe_conditions);
        if (gallery.empty() || clean_probe.empty())
            throw EmptySplit("protocol '" + spec.dataset +
                             "' leaves an empty gallery or probe set");

        const MetricRow clean = compute_metrics(clean_probe, gallery, dist, opts.top_k);

        json results = json::array();
        std::map<std::string, std::pair<double, double>> family_sums;
        std::map<std::string, int> family_counts;

        std::vector<fs::path> perturbed_files;
        for (const auto& e : fs::directory_iterator(opts.perturbed_dir))
            if (e.is_regular_file()) perturbed_files.push_back(e.path());
        std::sort(perturbed_files.begin(), perturbed_files.end());
        if (perturbed_files.empty())
            throw InvalidConfig("no perturbed embedding files in " + opts.perturbed_dir);

        for (const auto& file : perturbed_files) {
            // Filenames follow <kind>_s<severity>.<ext>.
            const std::string stem = file.stem().string();
            const auto sep = stem.rfind("_s");
            if (sep == std::string::npos) continue;
            const std::string kind_name = stem.substr(0, sep);
            const int severity = std::atoi(stem.c_str() + sep + 2);
            CorruptionKind kind;
            try {
                kind = kind_from_string(kind_name);
            } catch (const UnknownCorruption&) {
                std::cerr << "skipping unrecognized file: " << file << "\n";
                continue;
            }
            const auto probe = filter(io::load_embeddings(file), probe_conditions);
            if (probe.empty())
                throw EmptySplit("perturbed file " + file.string() +
                                 " has no probe-condition records");
            const MetricRow row = compute_metrics(probe, gallery, dist, opts.top_k);
            const auto delta =
                metrics::robustness({clean.rank1, row.rank1});
            json topk = json::object();
            for (const auto& [k, v] : row.topk) topk["top" + std::to_string(k)] = v;
            results.push_back({{"kind", kind_name},
                               {"family", to_string(family_of(kind))},
                               {"severity", severity},
                               {"rank1", row.rank1},
                               {"mAP", row.map},
                               {"topk", topk},
                               {"delta_a", delta.absolute},
                               {"delta_r", delta.relative}});
            auto& sums = family_sums[to_string(family_of(kind))];
            sums.first += delta.absolute;
            sums.second += delta.relative;
            ++family_counts[to_string(family_of(kind))];
        }

        json families = json::array();
        for (const auto& [family, sums] : family_sums)
            families.push_back({{"family", family},
                                {"delta_a", sums.first / family_counts[family]},
                                {"delta_r", sums.second / family_counts[family]}});

        json clean_topk = json::object();
        for (const auto& [k, v] : clean.topk) clean_topk["top" + std::to_string(k)] = v;
        json report{
            {"metadata",
             {{"engine_version", io::kEngineVersion},
              {"protocol", spec.dataset},
              {"distance", metrics::to_string(dist)},
              {"gallery_mode", noisy_gallery ? "noisy" : "clean"},
              {"tag", opts.tag},
              // Family scores are plain means over the member (kind, severity)
              // cells; stated here because the aggregation is a choice.
              {"family_aggregation", "mean_over_kinds_and_severities"}}},
            {"clean", {{"rank1", clean.rank1}, {"mAP", clean.map}, {"topk", clean_topk}}},
            {"results", results},
            {"family_aggregates", families}};

        std::ofstream jout(opts.output_prefix + ".json");
        jout << report.dump(2) << '\n';
        std::ofstream cout_csv(opts.output_prefix + ".csv");
        cout_csv << "kind,severity,rank1,mAP,delta_a,delta_r\n";
        cout_csv.precision(10);
        for (const auto& r : results)
            cout_csv << r["kind"].get<std::string>() << ',' << r["severity"].get<int>()
                     << ',' << r["rank1"].get<double>() << ',' << r["mAP"].get<double>()
                     << ',' << r["delta_a"].get<double>() << ','
                     << r["delta_r"].get<double>() << '\n';
        if (!jout || !cout_csv) throw IoError("cannot write report files");
        std::cout << "evaluate: " << results.size() << " perturbed cells, clean rank1 "
                  << clean.rank1 << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_report(const ReportOptions& opts) {
    if (opts.inputs.empty()) {
        std::cerr << "config error: no report inputs given\n";
        return 2;
    }
    try {
        std::vector<json> reports;
        for (const auto& path : opts.inputs) {
            std::ifstream in(path);
            if (!in) throw IoError("cannot open report: " + path);
            json j;
            in >> j;
            reports.push_back(std::move(j));
        }
        const auto& first_meta = reports.front()["metadata"];
        for (const auto& r : reports)
            if (r["metadata"]["protocol"] != first_meta["protocol"] ||
                r["metadata"]["distance"] != first_meta["distance"] ||
                r["metadata"]["gallery_mode"] != first_meta["gallery_mode"])
                throw InvalidConfig(
                    "refusing to merge reports with conflicting protocol metadata");

        // kind -> model tag -> severity -> rank1
        std::map<std::string, std::map<std::string, std::map<int, double>>> table;
        std::map<std::string, double> clean_by_tag;
        std::vector<std::string> tags;
        for (const auto& r : reports) {
            const std::string tag = r["metadata"]["tag"].get<std::string>();
            tags.push_back(tag);
            clean_by_tag[tag] = r["clean"]["rank1"].get<double>();
            for (const auto& cell : r["results"])
                table[cell["kind"].get<std::string>()][tag]
                     [cell["severity"].get<int>()] = cell["rank1"].get<double>();
        }

        std::ofstream csv(opts.output_prefix + ".csv");
        std::ofstream md(opts.output_prefix + ".md");
        csv.precision(10);
        csv << "kind,model,clean,sev1,sev2,sev3,sev4,sev5\n";
        md << "| Perturbation | Model | Clean | Sev 1 | Sev 2 | Sev 3 | Sev 4 | Sev 5 |\n";
        md << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& [kind, by_tag] : table)
            for (const auto& tag : tags) {
                auto it = by_tag.find(tag);
                if (it == by_tag.end()) continue;
                csv << kind << ',' << tag << ',' << clean_by_tag[tag];
                md << "| " << kind << " | " << tag << " | " << clean_by_tag[tag];
                for (int s = 1; s <= 5; ++s) {
                    auto sv = it->second.find(s);
                    if (sv == it->second.end()) {
                        csv << ",";
                        md << " | -";
                    } else {
                        csv << ',' << sv->second;
                        md << " | " << sv->second;
                    }
                }
                csv << '\n';
                md << " |\n";
            }

        md << "\n| Family | Model | delta_a | delta_r |\n|---|---|---|---|\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
            for (const auto& fam : reports[i]["family_aggregates"])
                md << "| " << fam["family"].get<std::string>() << " | " << tags[i]
                   << " | " << fam["delta_a"].get<double>() << " | "
                   << fam["delta_r"].get<double>() << " |\n";
        if (!csv || !md) throw IoError("cannot write report tables");
        std::cout << "report: wrote " << opts.output_prefix << ".csv and .md\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace robustgait::cli
