#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include "fslhate/metrics.hpp"
#include "fslhate/runconfig.hpp"

namespace fslhate {

struct TrainOutcome {
    std::vector<MetricsReport> per_seed;
    MetricsReport mean;
    std::filesystem::path run_dir;
};

/// Full training pipeline: load -> split -> optional few-shot sample ->
/// vocab build -> per-seed train/eval -> aggregate. Writes vocab.txt,
/// test.tsv, per-seed checkpoints and logs, metrics_seed<k>.{txt,json} and
/// metrics_mean.{txt,json} into the run directory. A failed run leaves a
/// FAILED marker instead of partial artifacts.
TrainOutcome run_training(const RunConfig& config);

/// Deterministic eval-mode inference of a checkpoint over a dataset file.
/// The vocabulary file must sit alongside the checkpoint and match the
/// manifest hash. Writes metrics_eval.{txt,json} next to the checkpoint.
MetricsReport run_eval(const RunConfig& config);

struct AblationOutcome {
    std::map<std::string, MetricsReport> per_variant;  // cross-seed means
    std::string table;
    std::filesystem::path run_dir;
};

/// Runs full, no_prompt, no_augmentation, no_attention and
/// no_prompt_and_augmentation over shared seeds, splits and vocabulary;
/// only the ablated component differs. Writes ablation_table.txt.
AblationOutcome run_ablation(const RunConfig& config);

struct AugmentOutcome {
    std::filesystem::path output;
    std::size_t lines = 0;
    std::size_t covered = 0;
    std::size_t replaced = 0;
    double rate = 0.0;  // replaced / covered
};

/// Re-writes a tsv corpus with synonym replacement applied per line
/// (per-example rng streams) and reports the covered-token replacement rate.
AugmentOutcome run_augment(const RunConfig& config);

struct SyntheticOutcome {
    std::filesystem::path corpus;
    std::filesystem::path lexicon;
    std::size_t examples = 0;
};

SyntheticOutcome run_gen_synthetic(const RunConfig& config);

// Pipeline helpers shared with the bindings/tests.
std::vector<RawExample> load_dataset(const std::string& format,
                                     const std::filesystem::path& path);
MetricsReport evaluate_examples(const ModelParams& params, const ModelConfig& config,
                                const Vocabulary& vocab, const std::vector<RawExample>& examples);

// Vocabulary over the training pool, extended with lexicon synonyms of
// covered tokens (weighted by their expected augmented frequency) when
// augmentation is on, so replacement tokens do not all encode to UNK.
Vocabulary build_pipeline_vocab(const std::vector<std::vector<std::string>>& corpus,
                                std::size_t max_size, const SynonymLexicon* lexicon, double p);

}  // namespace fslhate
