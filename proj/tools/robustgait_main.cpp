#include <CLI11.hpp>

#include "robustgait/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Frame-sequence corruption engine and gait-robustness "
                 "evaluation harness"};
    app.require_subcommand(1);
    app.set_config("--config");

    robustgait::cli::CorruptOptions corrupt;
    auto* c = app.add_subcommand("corrupt",
                                 "Generate corrupted variants of a frame dataset");
    c->add_option("--input", corrupt.input_root,
                  "Dataset root (identity/condition/view/frames)")
        ->required();
    c->add_option("--output", corrupt.output_root, "Output root")->required();
    c->add_option("--kinds", corrupt.kinds, "Corruption kinds, or 'all'");
    c->add_option("--severities", corrupt.severities, "Severity levels 1..5 (default all)");
    c->add_option("--seed", corrupt.seed, "Root seed")->default_val(0);
    c->add_option("--mask-pack", corrupt.mask_pack_dir,
                  "Mask pack directory (needed for occlusion)");
    c->add_option("--workers", corrupt.workers,
                  "Worker budget (default: ROBUSTGAIT_WORKERS or all cores)");

    robustgait::cli::EvaluateOptions evaluate;
    auto* e = app.add_subcommand("evaluate", "Compute retrieval and robustness metrics");
    e->add_option("--gallery", evaluate.gallery_file, "Clean gallery embeddings")
        ->required();
    e->add_option("--clean-probe", evaluate.clean_probe_file, "Clean probe embeddings")
        ->required();
    e->add_option("--perturbed-dir", evaluate.perturbed_dir,
                  "Directory of <kind>_s<severity> embedding files")
        ->required();
    e->add_option("--noisy-gallery", evaluate.noisy_gallery_file,
                  "Noisy gallery embeddings (replaces the clean gallery)");
    e->add_option("--protocol", evaluate.protocol,
                  "casia_b, ccpg, sustech1k, custom, or a protocol JSON file");
    e->add_option("--distance", evaluate.distance, "euclidean or cosine");
    e->add_option("--top-k", evaluate.top_k, "Top-k accuracy levels");
    e->add_option("--output", evaluate.output_prefix, "Report prefix")->required();
    e->add_option("--tag", evaluate.tag, "Model/extractor tag for the report");

    robustgait::cli::ReportOptions report;
    auto* r = app.add_subcommand("report", "Render kind x severity comparison tables");
    r->add_option("inputs", report.inputs, "Report JSON files");
    r->add_option("--output", report.output_prefix, "Table prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    if (c->parsed()) return robustgait::cli::cmd_corrupt(corrupt);
    if (e->parsed()) return robustgait::cli::cmd_evaluate(evaluate);
    return robustgait::cli::cmd_report(report);
}
