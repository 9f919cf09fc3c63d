#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "fslhate/rng.hpp"

namespace fslhate {

/// Token -> synonym set. Stands in for WordNet; any TSV file of the form
/// `headword<TAB>syn1<TAB>syn2...` works. Synonym lists are sorted, deduped
/// and never contain their own headword.
struct SynonymLexicon {
    std::unordered_map<std::string, std::vector<std::string>> entries;
    std::size_t skipped_lines = 0;  // lines that ended up with no usable synonyms

    bool covers(const std::string& token) const { return entries.count(token) > 0; }
    std::size_t size() const { return entries.size(); }
};

SynonymLexicon load_lexicon(const std::filesystem::path& path);
void save_lexicon(const SynonymLexicon& lexicon, const std::filesystem::path& path);

struct AugmentConfig {
    double p = 0.1;  // per-token replacement probability
    std::uint64_t master_seed = 0;

    void validate() const;
};

/// Synonym-replacement augmentation. Per covered position: one Bernoulli
/// draw, then (only on success) one uniform draw over the synonym list.
/// Sentinel tokens (<url>, <user>) and uncovered tokens pass through and
/// consume no draws. Output length always equals input length.
std::vector<std::string> augment(const std::vector<std::string>& tokens,
                                 const SynonymLexicon& lexicon, const AugmentConfig& config,
                                 Rng& rng);

struct AugmentStats {
    std::size_t covered = 0;
    std::size_t replaced = 0;
};

// Same draws as augment(); also reports how many covered positions there
// were and how many got replaced.
std::vector<std::string> augment_with_stats(const std::vector<std::string>& tokens,
                                            const SynonymLexicon& lexicon,
                                            const AugmentConfig& config, Rng& rng,
                                            AugmentStats& stats);

}  // namespace fslhate
