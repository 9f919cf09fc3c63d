#include "fslhate/data.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fslhate/errors.hpp"
#include "fslhate/rng.hpp"

namespace fslhate {

std::vector<std::string> tokens_of(const RawExample& example) {
    if (!example.tokens.empty()) return example.tokens;
    return tokenize(example.text);
}

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> whitespace_split(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) out.push_back(token);
    return out;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

// Minimal RFC-4180 reader: quoted fields may contain commas, doubled
// quotes and newlines.
class CsvReader {
   public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    bool next_row(std::vector<std::string>& fields) {
        fields.clear();
        int c = in_.get();
        if (c == EOF) return false;
        std::string field;
        bool quoted = false;
        while (true) {
            if (quoted) {
                if (c == EOF) throw FormatError("csv: unterminated quoted field");
                if (c == '"') {
                    int peek = in_.get();
                    if (peek == '"') {
                        field += '"';
                    } else {
                        quoted = false;
                        c = peek;
                        continue;
                    }
                } else {
                    field += static_cast<char>(c);
                }
            } else {
                if (c == '"' && field.empty()) {
                    quoted = true;
                } else if (c == ',') {
                    fields.push_back(std::move(field));
                    field.clear();
                } else if (c == '\n' || c == EOF) {
                    if (!field.empty() && field.back() == '\r') field.pop_back();
                    fields.push_back(std::move(field));
                    return true;
                } else {
                    field += static_cast<char>(c);
                }
            }
            c = in_.get();
        }
    }

   private:
    std::istream& in_;
};

}  // namespace

HatexplainLoad load_hatexplain(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_hatexplain: cannot open " + path.string());

    nlohmann::json root;
    try {
        in >> root;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("load_hatexplain: invalid JSON in " + path.string() + ": " + e.what());
    }
    if (!root.is_object()) throw FormatError("load_hatexplain: top level is not an object");

    HatexplainLoad out;
    for (const auto& [post_id, record] : root.items()) {
        ++out.total_records;
        if (!record.is_object() || !record.contains("post_tokens") ||
            !record.contains("annotators") || !record["post_tokens"].is_array() ||
            !record["annotators"].is_array()) {
            throw FormatError("load_hatexplain: malformed record for post " + post_id);
        }
        std::array<int, kNumClasses> votes{};
        for (const auto& annotator : record["annotators"]) {
            if (!annotator.is_object() || !annotator.contains("label") ||
                !annotator["label"].is_string()) {
                throw FormatError("load_hatexplain: malformed annotator for post " + post_id);
            }
            int label = label_from_string(annotator["label"].get<std::string>());
            if (label < 0) {
                throw FormatError("load_hatexplain: unknown label for post " + post_id);
            }
            ++votes[static_cast<std::size_t>(label)];
        }
        int best = 0;
        bool strict = false;
        for (int c = 1; c < static_cast<int>(kNumClasses); ++c) {
            if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)]) best = c;
        }
        strict = true;
        for (int c = 0; c < static_cast<int>(kNumClasses); ++c) {
            if (c != best && votes[static_cast<std::size_t>(c)] >= votes[static_cast<std::size_t>(best)]) {
                strict = false;
            }
        }
        if (!strict) {
            ++out.skipped_no_majority;
            continue;
        }
        RawExample ex;
        ex.id = post_id;
        ex.label = best;
        ex.source = Source::hatexplain;
        for (const auto& token : record["post_tokens"]) {
            if (!token.is_string()) {
                throw FormatError("load_hatexplain: non-string token for post " + post_id);
            }
            ex.tokens.push_back(lowercase(token.get<std::string>()));
        }
        ex.text = join(ex.tokens);
        out.examples.push_back(std::move(ex));
    }
    return out;
}

std::vector<RawExample> load_hsol(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_hsol: cannot open " + path.string());

    CsvReader reader(in);
    std::vector<std::string> header;
    if (!reader.next_row(header)) throw FormatError("load_hsol: empty file " + path.string());
    long class_col = -1;
    long tweet_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "class") class_col = static_cast<long>(i);
        if (header[i] == "tweet") tweet_col = static_cast<long>(i);
    }
    if (class_col < 0 || tweet_col < 0) {
        throw FormatError("load_hsol: missing class/tweet columns in " + path.string());
    }

    std::vector<RawExample> out;
    std::vector<std::string> fields;
    std::size_t row_no = 1;
    while (reader.next_row(fields)) {
        ++row_no;
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing newline
        if (fields.size() <= static_cast<std::size_t>(std::max(class_col, tweet_col))) {
            throw FormatError("load_hsol: too few columns at row " + std::to_string(row_no));
        }
        const std::string& cls = fields[static_cast<std::size_t>(class_col)];
        RawExample ex;
        // published coding: 0 = hate speech, 1 = offensive, 2 = neither
        if (cls == "0") {
            ex.label = kLabelHatespeech;
        } else if (cls == "1") {
            ex.label = kLabelOffensive;
        } else if (cls == "2") {
            ex.label = kLabelNormal;
        } else {
            throw FormatError("load_hsol: unparseable class at row " + std::to_string(row_no));
        }
        ex.id = "hsol-" + std::to_string(row_no - 1);
        ex.text = fields[static_cast<std::size_t>(tweet_col)];
        ex.source = Source::hsol;
        out.push_back(std::move(ex));
    }
    return out;
}

std::vector<RawExample> load_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_tsv: cannot open " + path.string());
    std::vector<RawExample> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw FormatError("load_tsv: missing tab at line " + std::to_string(line_no));
        }
        int label = label_from_string(line.substr(0, tab));
        if (label < 0) {
            throw FormatError("load_tsv: unknown label at line " + std::to_string(line_no));
        }
        RawExample ex;
        ex.id = "line" + std::to_string(line_no);
        ex.label = label;
        ex.text = line.substr(tab + 1);
        ex.tokens = whitespace_split(ex.text);
        ex.source = Source::tsv;
        out.push_back(std::move(ex));
    }
    return out;
}

void save_tsv(const std::vector<RawExample>& examples, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_tsv: cannot open " + path.string());
    for (const RawExample& ex : examples) {
        out << label_name(ex.label) << '\t'
            << (ex.tokens.empty() ? ex.text : join(ex.tokens)) << '\n';
    }
    if (!out) throw IoError("save_tsv: write failed for " + path.string());
}

void SplitSpec::validate() const {
    if (train <= 0.0 || val <= 0.0 || test <= 0.0) {
        throw InvalidArgument("SplitSpec: fractions must be positive");
    }
    if (std::abs(train + val + test - 1.0) > 1e-9) {
        throw InvalidArgument("SplitSpec: fractions must sum to 1");
    }
}

Splits split(const std::vector<RawExample>& examples, const SplitSpec& spec) {
    spec.validate();
    if (examples.empty()) throw InvalidArgument("split: empty input");

    std::vector<std::vector<std::size_t>> groups;
    if (spec.stratified) {
        groups.resize(kNumClasses);
        for (std::size_t i = 0; i < examples.size(); ++i) {
            int label = examples[i].label;
            if (label < 0 || static_cast<std::size_t>(label) >= kNumClasses) {
                throw InvalidArgument("split: label out of range");
            }
            groups[static_cast<std::size_t>(label)].push_back(i);
        }
    } else {
        groups.resize(1);
        for (std::size_t i = 0; i < examples.size(); ++i) groups[0].push_back(i);
    }

    Splits out;
    Rng rng(spec.seed);
    for (std::vector<std::size_t>& group : groups) {
        if (group.empty()) continue;
        for (std::size_t i = group.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
            std::swap(group[i], group[j]);
        }
        // Largest-remainder apportionment: exact when the fractions divide
        // the group evenly, fair to within one example otherwise.
        std::size_t n = group.size();
        double fractions[3] = {spec.train, spec.val, spec.test};
        std::size_t sizes[3];
        double remainders[3];
        std::size_t assigned = 0;
        for (int p = 0; p < 3; ++p) {
            double ideal = fractions[p] * static_cast<double>(n);
            sizes[p] = static_cast<std::size_t>(ideal);
            remainders[p] = ideal - static_cast<double>(sizes[p]);
            assigned += sizes[p];
        }
        while (assigned < n) {
            int best = 0;
            for (int p = 1; p < 3; ++p) {
                if (remainders[p] > remainders[best]) best = p;
            }
            ++sizes[best];
            remainders[best] = -1.0;
            ++assigned;
        }
        std::size_t b1 = sizes[0];
        std::size_t b2 = sizes[0] + sizes[1];
        for (std::size_t i = 0; i < n; ++i) {
            const RawExample& ex = examples[group[i]];
            if (i < b1) {
                out.train.push_back(ex);
            } else if (i < b2) {
                out.val.push_back(ex);
            } else {
                out.test.push_back(ex);
            }
        }
    }
    return out;
}

std::vector<RawExample> sample_few_shot(const std::vector<RawExample>& examples,
                                        std::size_t k_per_class, std::uint64_t seed) {
    std::vector<std::vector<std::size_t>> groups(kNumClasses);
    for (std::size_t i = 0; i < examples.size(); ++i) {
        int label = examples[i].label;
        if (label < 0 || static_cast<std::size_t>(label) >= kNumClasses) {
            throw InvalidArgument("sample_few_shot: label out of range");
        }
        groups[static_cast<std::size_t>(label)].push_back(i);
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        if (groups[c].size() < k_per_class) {
            throw InvalidArgument("sample_few_shot: class '" + label_name(static_cast<int>(c)) +
                                  "' has only " + std::to_string(groups[c].size()) +
                                  " examples, need " + std::to_string(k_per_class));
        }
    }
    std::vector<RawExample> out;
    out.reserve(kNumClasses * k_per_class);
    Rng rng(seed);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        std::vector<std::size_t>& group = groups[c];
        for (std::size_t i = 0; i < k_per_class; ++i) {  // partial Fisher-Yates
            std::size_t j = i + static_cast<std::size_t>(rng.below(group.size() - i));
            std::swap(group[i], group[j]);
            out.push_back(examples[group[i]]);
        }
    }
    return out;
}

SyntheticData gen_synthetic(std::size_t n_per_class, double noise, std::uint64_t seed) {
    if (noise < 0.0 || noise > 1.0) throw InvalidArgument("gen_synthetic: noise must lie in [0, 1]");

    constexpr std::size_t kKeywordsPerClass = 8;
    constexpr std::size_t kFillerCount = 16;
    static const std::array<const char*, kNumClasses> kPrefix = {"calm", "grumble", "venom"};

    SyntheticData out;
    std::vector<std::vector<std::string>> keywords(kNumClasses);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        for (std::size_t k = 0; k < kKeywordsPerClass; ++k) {
            std::string base = std::string(kPrefix[c]) + std::to_string(k);
            keywords[c].push_back(base);
            out.lexicon.entries[base] = {base + "x", base + "y"};
        }
    }
    std::vector<std::string> fillers;
    for (std::size_t f = 0; f < kFillerCount; ++f) fillers.push_back("filler" + std::to_string(f));

    Rng rng(seed);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        for (std::size_t i = 0; i < n_per_class; ++i) {
            RawExample ex;
            ex.id = "syn-" + std::to_string(c) + "-" + std::to_string(i);
            ex.label = static_cast<int>(c);
            ex.source = Source::synthetic;
            std::size_t len = 8 + static_cast<std::size_t>(rng.below(13));  // 8..20
            for (std::size_t t = 0; t < len; ++t) {
                if (rng.next_double() < noise) {
                    ex.tokens.push_back(fillers[rng.below(fillers.size())]);
                } else {
                    ex.tokens.push_back(keywords[c][rng.below(keywords[c].size())]);
                }
            }
            ex.text = join(ex.tokens);
            out.examples.push_back(std::move(ex));
        }
    }
    return out;
}

}  // namespace fslhate
