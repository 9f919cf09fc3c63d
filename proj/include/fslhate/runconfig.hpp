#pragma once

#include <filesystem>
#include <string>

#include "fslhate/data.hpp"
#include "fslhate/metrics.hpp"
#include "fslhate/model.hpp"
#include "fslhate/train.hpp"

namespace fslhate {

/// Everything a run needs, read from a flat `key = value` config file
/// (`#` starts a comment). Every key has a default except the dataset
/// path; unknown keys are errors.
struct RunConfig {
    ModelConfig model;
    TrainConfig train;
    SplitSpec split;

    std::string dataset_format = "tsv";  // hatexplain | hsol | tsv
    std::filesystem::path dataset;
    std::filesystem::path lexicon;
    std::filesystem::path out = "run";
    std::filesystem::path checkpoint;  // eval input

    std::size_t vocab_size = kDefaultVocabSize;
    std::size_t k_per_class = 0;  // 0 = no few-shot subsampling
    Average average = Average::macro;
    std::string variant = "full";

    // gen-synthetic inputs
    std::size_t n_per_class = 100;
    double noise = 0.0;
};

RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

// Canonical rendering of every key (the run directory copy).
std::string render_config(const RunConfig& config);

}  // namespace fslhate
