#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fslhate/errors.hpp"
#include "fslhate/runner.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::int64_t seed = -1;
    std::string out;
    std::string dataset_format;
    std::string variant;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required = true) {
    auto* config = cmd->add_option("--config", opts.config_path, "run configuration file");
    if (config_required) config->required();
    cmd->add_option("--seed", opts.seed, "override the seed list with a single seed");
    cmd->add_option("--out", opts.out, "override the output run directory");
    cmd->add_option("--dataset-format", opts.dataset_format, "hatexplain|hsol|tsv")
        ->check(CLI::IsMember({"hatexplain", "hsol", "tsv"}));
    cmd->add_option("--variant", opts.variant,
                    "full|no_prompt|no_augmentation|no_attention|no_prompt_and_augmentation");
}

fslhate::RunConfig make_config(const CommonOptions& opts) {
    fslhate::RunConfig cfg = opts.config_path.empty()
                                 ? fslhate::RunConfig{}
                                 : fslhate::parse_config_file(opts.config_path);
    if (opts.seed >= 0) cfg.train.seeds = {static_cast<std::uint64_t>(opts.seed)};
    if (!opts.out.empty()) cfg.out = opts.out;
    if (!opts.dataset_format.empty()) cfg.dataset_format = opts.dataset_format;
    if (!opts.variant.empty()) cfg.variant = opts.variant;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"few-shot hate speech classifier: train, evaluate, ablate, augment"};
    app.require_subcommand(1);

    CommonOptions train_opts, eval_opts, ablate_opts, augment_opts, gen_opts;
    CLI::App* train_cmd = app.add_subcommand("train", "train and evaluate per seed");
    add_common(train_cmd, train_opts);
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint on a dataset");
    add_common(eval_cmd, eval_opts);
    CLI::App* ablate_cmd = app.add_subcommand("ablate", "run the ablation variants");
    add_common(ablate_cmd, ablate_opts);
    CLI::App* augment_cmd = app.add_subcommand("augment", "synonym-augment a tsv corpus");
    add_common(augment_cmd, augment_opts);
    CLI::App* gen_cmd = app.add_subcommand("gen-synthetic", "write a synthetic corpus + lexicon");
    add_common(gen_cmd, gen_opts, /*config_required=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems are exit 2
    }

    try {
        if (train_cmd->parsed()) {
            fslhate::run_training(make_config(train_opts));
        } else if (eval_cmd->parsed()) {
            fslhate::run_eval(make_config(eval_opts));
        } else if (ablate_cmd->parsed()) {
            fslhate::run_ablation(make_config(ablate_opts));
        } else if (augment_cmd->parsed()) {
            fslhate::run_augment(make_config(augment_opts));
        } else if (gen_cmd->parsed()) {
            fslhate::run_gen_synthetic(make_config(gen_opts));
        }
        return 0;
    } catch (const fslhate::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const fslhate::ArtifactMismatch& e) {
        std::cerr << "artifact mismatch: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
