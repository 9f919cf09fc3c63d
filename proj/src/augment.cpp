#include "fslhate/augment.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "fslhate/errors.hpp"
#include "fslhate/textpipe.hpp"

namespace fslhate {

namespace {

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        if (c < 0x80) {
            extra = 0;
        } else if ((c >> 5) == 0x6) {
            extra = 1;
        } else if ((c >> 4) == 0xe) {
            extra = 2;
        } else if ((c >> 3) == 0x1e) {
            extra = 3;
        } else {
            return false;
        }
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= s.size() || (static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
        }
        i += extra + 1;
    }
    return true;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

}  // namespace

SynonymLexicon load_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_lexicon: cannot open " + path.string());

    // Collect into sorted sets first so duplicate headwords merge and the
    // final synonym order is independent of file order.
    std::map<std::string, std::map<std::string, bool>> merged;
    SynonymLexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!valid_utf8(line)) {
            throw FormatError("load_lexicon: malformed UTF-8 at line " + std::to_string(line_no) +
                              " of " + path.string());
        }
        std::vector<std::string> fields = split_tabs(line);
        const std::string& head = fields[0];
        if (head.empty()) continue;
        bool any = false;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (fields[i].empty() || fields[i] == head) continue;  // self-references dropped
            merged[head][fields[i]] = true;
            any = true;
        }
        if (!any) ++lexicon.skipped_lines;
    }
    if (in.bad()) throw IoError("load_lexicon: read failed for " + path.string());

    for (auto& [head, syns] : merged) {
        std::vector<std::string> list;
        list.reserve(syns.size());
        for (auto& [syn, _] : syns) list.push_back(syn);
        lexicon.entries.emplace(head, std::move(list));
    }
    return lexicon;
}

void save_lexicon(const SynonymLexicon& lexicon, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_lexicon: cannot open " + path.string());
    std::map<std::string, const std::vector<std::string>*> ordered;
    for (const auto& [head, syns] : lexicon.entries) ordered[head] = &syns;
    for (const auto& [head, syns] : ordered) {
        out << head;
        for (const auto& s : *syns) out << '\t' << s;
        out << '\n';
    }
    if (!out) throw IoError("save_lexicon: write failed for " + path.string());
}

void AugmentConfig::validate() const {
    if (p < 0.0 || p > 1.0) throw InvalidArgument("AugmentConfig: p must lie in [0, 1]");
}

std::vector<std::string> augment(const std::vector<std::string>& tokens,
                                 const SynonymLexicon& lexicon, const AugmentConfig& config,
                                 Rng& rng) {
    AugmentStats stats;
    return augment_with_stats(tokens, lexicon, config, rng, stats);
}

std::vector<std::string> augment_with_stats(const std::vector<std::string>& tokens,
                                            const SynonymLexicon& lexicon,
                                            const AugmentConfig& config, Rng& rng,
                                            AugmentStats& stats) {
    config.validate();
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& token : tokens) {
        if (token == kUrlToken || token == kUserToken) {
            out.push_back(token);
            continue;
        }
        auto it = lexicon.entries.find(token);
        if (it == lexicon.entries.end()) {
            out.push_back(token);
            continue;
        }
        ++stats.covered;
        if (rng.next_double() < config.p) {
            const std::vector<std::string>& syns = it->second;
            std::size_t pick = std::min(
                syns.size() - 1, static_cast<std::size_t>(rng.next_double() *
                                                          static_cast<double>(syns.size())));
            out.push_back(syns[pick]);
            ++stats.replaced;
        } else {
            out.push_back(token);
        }
    }
    return out;
}

}  // namespace fslhate
