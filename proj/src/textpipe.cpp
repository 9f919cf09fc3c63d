#include "fslhate/textpipe.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "fslhate/errors.hpp"

namespace fslhate {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// ASCII punctuation only; bytes >= 0x80 (UTF-8 continuation/lead) are word
// characters so multibyte text is never split mid-codepoint.
bool is_punct(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
}

bool is_url(std::string_view chunk) {
    return chunk.substr(0, 7) == "http://" || chunk.substr(0, 8) == "https://" ||
           chunk.substr(0, 4) == "www.";
}

bool is_mention(std::string_view chunk) {
    if (chunk.size() < 2 || chunk[0] != '@') return false;
    for (char c : chunk.substr(1)) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_')) return false;
    }
    return true;
}

}  // namespace

const std::string& label_name(int label) {
    static const std::string names[] = {"normal", "offensive", "hatespeech"};
    if (label < 0 || label >= static_cast<int>(kNumClasses)) {
        throw InvalidArgument("label_name: label out of range");
    }
    return names[label];
}

int label_from_string(std::string_view s) {
    if (s == "normal" || s == "neither" || s == "0") return kLabelNormal;
    if (s == "offensive" || s == "1") return kLabelOffensive;
    if (s == "hatespeech" || s == "2") return kLabelHatespeech;
    return -1;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !is_space(text[j])) ++j;
        std::string chunk(text.substr(i, j - i));
        i = j;

        std::transform(chunk.begin(), chunk.end(), chunk.begin(), [](unsigned char c) {
            return static_cast<char>(std::tolower(c));
        });
        if (is_url(chunk)) {
            out.emplace_back(kUrlToken);
            continue;
        }
        if (is_mention(chunk)) {
            out.emplace_back(kUserToken);
            continue;
        }
        // Split the chunk into alternating word / punctuation-run tokens.
        std::size_t a = 0;
        while (a < chunk.size()) {
            std::size_t b = a;
            bool punct = is_punct(chunk[a]);
            while (b < chunk.size() && is_punct(chunk[b]) == punct) ++b;
            out.emplace_back(chunk.substr(a, b - a));
            a = b;
        }
    }
    return out;
}

int Vocabulary::id_of(const std::string& token) const {
    auto it = token_to_id.find(token);
    return it == token_to_id.end() ? kUnkId : it->second;
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus,
                       std::size_t max_size) {
    std::map<std::string, long long> counts;
    for (const auto& tokens : corpus) {
        for (const auto& t : tokens) ++counts[t];
    }
    return build_vocab_from_counts(counts, max_size);
}

Vocabulary build_vocab_from_counts(const std::map<std::string, long long>& counts,
                                   std::size_t max_size) {
    if (max_size < 3) throw InvalidArgument("build_vocab: max_size must be >= 3");

    std::vector<std::pair<std::string, long long>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    vocab.max_size = max_size;
    vocab.id_to_token = {std::string(kPadToken), std::string(kUnkToken)};
    vocab.token_to_id[std::string(kPadToken)] = kPadId;
    vocab.token_to_id[std::string(kUnkToken)] = kUnkId;
    for (const auto& [token, count] : ranked) {
        if (vocab.id_to_token.size() >= max_size) break;
        if (vocab.contains(token)) continue;  // reserved literals in the corpus
        vocab.token_to_id[token] = static_cast<int>(vocab.id_to_token.size());
        vocab.id_to_token.push_back(token);
    }
    return vocab;
}

EncodedExample encode(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                      std::size_t seq_len) {
    if (seq_len < 1) throw InvalidArgument("encode: seq_len must be >= 1");
    EncodedExample ex;
    ex.ids.assign(seq_len, kPadId);
    ex.true_length = static_cast<int>(std::min(tokens.size(), seq_len));
    for (int i = 0; i < ex.true_length; ++i) {
        ex.ids[static_cast<std::size_t>(i)] = vocab.id_of(tokens[static_cast<std::size_t>(i)]);
    }
    return ex;
}

std::vector<std::string> decode(const EncodedExample& example, const Vocabulary& vocab) {
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(example.true_length));
    for (int i = 0; i < example.true_length; ++i) {
        int id = example.ids[static_cast<std::size_t>(i)];
        if (id < 0 || id >= static_cast<int>(vocab.size())) {
            throw InvalidArgument("decode: id out of range");
        }
        tokens.push_back(vocab.id_to_token[static_cast<std::size_t>(id)]);
    }
    return tokens;
}

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_vocab: cannot open " + path.string());
    for (const auto& token : vocab.id_to_token) out << token << '\n';
    if (!out) throw IoError("save_vocab: write failed for " + path.string());
}

Vocabulary load_vocab(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_vocab: cannot open " + path.string());
    Vocabulary vocab;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        int id = static_cast<int>(vocab.id_to_token.size());
        vocab.id_to_token.push_back(line);
        vocab.token_to_id[line] = id;
    }
    if (vocab.size() < 2 || vocab.id_to_token[0] != kPadToken || vocab.id_to_token[1] != kUnkToken) {
        throw FormatError("load_vocab: missing <pad>/<unk> header lines in " + path.string());
    }
    vocab.max_size = std::max(vocab.size(), kDefaultVocabSize);
    return vocab;
}

}  // namespace fslhate
