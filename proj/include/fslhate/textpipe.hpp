#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fslhate {

inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kUrlToken = "<url>";
inline constexpr std::string_view kUserToken = "<user>";

inline constexpr std::size_t kDefaultVocabSize = 15000;
inline constexpr std::size_t kDefaultSeqLen = 128;

// Class labels in fixed order; also the logit order of the classifier.
inline constexpr int kLabelNormal = 0;
inline constexpr int kLabelOffensive = 1;
inline constexpr int kLabelHatespeech = 2;
inline constexpr std::size_t kNumClasses = 3;

const std::string& label_name(int label);
// Accepts normal|neither|offensive|hatespeech (and 0/1/2); -1 when unknown.
int label_from_string(std::string_view s);

/// Lowercases, replaces URLs with <url> and @mentions with <user>, then
/// splits punctuation runs off as standalone tokens. Never emits empties.
std::vector<std::string> tokenize(std::string_view text);

struct Vocabulary {
    std::unordered_map<std::string, int> token_to_id;
    std::vector<std::string> id_to_token;  // [0] = <pad>, [1] = <unk>
    std::size_t max_size = kDefaultVocabSize;

    std::size_t size() const { return id_to_token.size(); }
    bool contains(const std::string& token) const { return token_to_id.count(token) > 0; }
    int id_of(const std::string& token) const;  // UNK for out-of-vocabulary
};

/// Frequency-ranked vocabulary capped at max_size (>= 3); ties broken by
/// ascending token order. PAD and UNK always occupy ids 0 and 1.
Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus,
                       std::size_t max_size = kDefaultVocabSize);

// Same ranking rule over precomputed counts (sorted map keeps it deterministic).
Vocabulary build_vocab_from_counts(const std::map<std::string, long long>& counts,
                                   std::size_t max_size = kDefaultVocabSize);

struct EncodedExample {
    std::vector<int> ids;  // exactly seq_len entries
    int true_length = 0;   // non-PAD prefix length
    int label = 0;
};

/// Fixed-length encoding: OOV -> UNK, truncate to the first seq_len tokens,
/// right-pad with PAD.
EncodedExample encode(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                      std::size_t seq_len = kDefaultSeqLen);

// Tokens for the first true_length positions (UNK positions come back as <unk>).
std::vector<std::string> decode(const EncodedExample& example, const Vocabulary& vocab);

// One token per line in id order; lines 0 and 1 are the literals <pad> and <unk>.
void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary load_vocab(const std::filesystem::path& path);

}  // namespace fslhate
