#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fslhate/augment.hpp"
#include "fslhate/textpipe.hpp"

namespace fslhate {

enum class Source { hatexplain, hsol, synthetic, tsv };

struct RawExample {
    std::string id;
    std::string text;                 // raw text (tokenized downstream) …
    std::vector<std::string> tokens;  // … or pre-tokenized tokens when non-empty
    int label = 0;
    Source source = Source::tsv;
};

// Pre-tokenized tokens when present, textpipe::tokenize(text) otherwise.
std::vector<std::string> tokens_of(const RawExample& example);

struct HatexplainLoad {
    std::vector<RawExample> examples;
    std::size_t total_records = 0;        // before majority filtering
    std::size_t skipped_no_majority = 0;  // annotator ties
};

/// HateXplain single-file JSON: map post id -> {post_tokens, annotators:[{label}]}.
/// Label = strict majority vote over annotator labels; ties are skipped and
/// counted. Tokens are taken verbatim (lowercased).
HatexplainLoad load_hatexplain(const std::filesystem::path& path);

/// HSOL CSV with header; needs `class` (0 hate, 1 offensive, 2 neither) and
/// `tweet` columns. Quoted fields with embedded commas/newlines are handled.
std::vector<RawExample> load_hsol(const std::filesystem::path& path);

/// Generic `label<TAB>text` corpus, one example per line; text is treated
/// as pre-tokenized (whitespace-separated, taken verbatim).
std::vector<RawExample> load_tsv(const std::filesystem::path& path);
void save_tsv(const std::vector<RawExample>& examples, const std::filesystem::path& path);

struct SplitSpec {
    double train = 0.8;
    double val = 0.1;
    double test = 0.1;
    std::uint64_t seed = 42;
    bool stratified = true;

    void validate() const;
};

struct Splits {
    std::vector<RawExample> train;
    std::vector<RawExample> val;
    std::vector<RawExample> test;
};

/// Seeded, stratified by default; the three parts are disjoint and cover
/// the input.
Splits split(const std::vector<RawExample>& examples, const SplitSpec& spec);

/// Exactly k_per_class examples per class, sampled uniformly without
/// replacement. Errors (naming the class) when a class is too small.
std::vector<RawExample> sample_few_shot(const std::vector<RawExample>& examples,
                                        std::size_t k_per_class, std::uint64_t seed);

struct SyntheticData {
    std::vector<RawExample> examples;
    SynonymLexicon lexicon;  // every class keyword -> 2 in-family synonyms
};

/// Desk-scale oracle corpus: three disjoint keyword families define the
/// classes; each example mixes 8-20 family keywords with a `noise` fraction
/// of shared filler tokens. The paired lexicon makes augmentation provably
/// class-preserving (synonyms stay in-family).
SyntheticData gen_synthetic(std::size_t n_per_class, double noise, std::uint64_t seed);

}  // namespace fslhate
