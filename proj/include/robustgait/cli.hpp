#pragma once

#include <string>
#include <vector>

namespace robustgait::cli {

// Exit codes: 0 success, 1 partial failure, 2 configuration error.

struct CorruptOptions {
    std::string input_root;
    std::string output_root;
    std::vector<std::string> kinds;      // names, or {"all"}
    std::vector<int> severities;         // 1..5, empty means all
    std::uint64_t seed = 0;
    std::string mask_pack_dir;           // required when occlusion is requested
    int workers = 0;                     // 0: env var / OpenMP default
};

struct EvaluateOptions {
    std::string gallery_file;        // clean gallery embeddings
    std::string clean_probe_file;    // clean probe embeddings
    std::string perturbed_dir;       // <kind>_s<severity>.txt|.bin files
    std::string noisy_gallery_file;  // optional; replaces the clean gallery
    std::string protocol = "custom"; // casia_b, ccpg, sustech1k, custom, or a JSON path
    std::string distance = "euclidean";
    std::vector<int> top_k = {1, 5, 10, 20};
    std::string output_prefix;       // writes <prefix>.json and <prefix>.csv
    std::string tag = "model";       // model/extractor tag echoed into metadata
};

struct ReportOptions {
    std::vector<std::string> inputs; // report JSONs
    std::string output_prefix;       // writes <prefix>.csv and <prefix>.md
};

int cmd_corrupt(const CorruptOptions& opts);
int cmd_evaluate(const EvaluateOptions& opts);
int cmd_report(const ReportOptions& opts);

} // namespace robustgait::cli
