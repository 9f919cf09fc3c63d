#include "fslhate/runconfig.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fslhate/errors.hpp"

namespace fslhate {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("config: bad number for '" + key + "': " + value);
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument("bad");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw InvalidArgument("config: bad integer for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "off" || value == "0" || value == "no") return false;
    throw InvalidArgument("config: bad boolean for '" + key + "': " + value);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& key, const std::string& value) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        seeds.push_back(static_cast<std::uint64_t>(parse_size(key, item)));
    }
    if (seeds.empty()) throw InvalidArgument("config: empty seed list for '" + key + "'");
    return seeds;
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("config: missing '=' at line " + std::to_string(line_no));
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw InvalidArgument("config: empty key at line " + std::to_string(line_no));

        if (key == "dataset") {
            cfg.dataset = value;
        } else if (key == "dataset_format") {
            if (value != "hatexplain" && value != "hsol" && value != "tsv") {
                throw InvalidArgument("config: dataset_format must be hatexplain|hsol|tsv");
            }
            cfg.dataset_format = value;
        } else if (key == "lexicon") {
            cfg.lexicon = value;
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "checkpoint") {
            cfg.checkpoint = value;
        } else if (key == "seeds") {
            cfg.train.seeds = parse_seed_list(key, value);
        } else if (key == "vocab_size") {
            cfg.vocab_size = parse_size(key, value);
        } else if (key == "seq_len") {
            cfg.model.seq_len = parse_size(key, value);
        } else if (key == "d_emb") {
            cfg.model.d_emb = parse_size(key, value);
        } else if (key == "prompt_len") {
            cfg.model.prompt_len = parse_size(key, value);
        } else if (key == "d_conv") {
            cfg.model.d_conv = parse_size(key, value);
        } else if (key == "kernel") {
            cfg.model.kernel = parse_size(key, value);
        } else if (key == "pool") {
            cfg.model.pool = parse_size(key, value);
        } else if (key == "d_lstm") {
            cfg.model.d_lstm = parse_size(key, value);
        } else if (key == "keep_prob") {
            cfg.model.keep_prob = parse_double(key, value);
        } else if (key == "lstm_input_dropout") {
            cfg.model.lstm_input_dropout = parse_double(key, value);
        } else if (key == "ln_eps") {
            cfg.model.ln_eps = parse_double(key, value);
        } else if (key == "batch_size") {
            cfg.train.batch_size = parse_size(key, value);
        } else if (key == "epochs") {
            cfg.train.epochs = parse_size(key, value);
        } else if (key == "lr_init") {
            cfg.train.lr_init = parse_double(key, value);
        } else if (key == "lr_min") {
            cfg.train.lr_min = parse_double(key, value);
        } else if (key == "weight_decay") {
            cfg.train.weight_decay = parse_double(key, value);
        } else if (key == "beta1") {
            cfg.train.beta1 = parse_double(key, value);
        } else if (key == "beta2") {
            cfg.train.beta2 = parse_double(key, value);
        } else if (key == "adam_eps") {
            cfg.train.adam_eps = parse_double(key, value);
        } else if (key == "clip_norm") {
            cfg.train.clip_norm = parse_double(key, value);
        } else if (key == "augment_p") {
            cfg.train.augment_p = parse_double(key, value);
        } else if (key == "augment") {
            cfg.train.augment_enabled = parse_bool(key, value);
        } else if (key == "class_weighting") {
            cfg.train.class_weighting = parse_bool(key, value);
        } else if (key == "split_train") {
            cfg.split.train = parse_double(key, value);
        } else if (key == "split_val") {
            cfg.split.val = parse_double(key, value);
        } else if (key == "split_test") {
            cfg.split.test = parse_double(key, value);
        } else if (key == "split_seed") {
            cfg.split.seed = static_cast<std::uint64_t>(parse_size(key, value));
        } else if (key == "stratified") {
            cfg.split.stratified = parse_bool(key, value);
        } else if (key == "k_per_class") {
            cfg.k_per_class = parse_size(key, value);
        } else if (key == "average") {
            cfg.average = average_from_string(value);
        } else if (key == "variant") {
            cfg.variant = value;
        } else if (key == "n_per_class") {
            cfg.n_per_class = parse_size(key, value);
        } else if (key == "noise") {
            cfg.noise = parse_double(key, value);
        } else {
            throw InvalidArgument("config: unknown key '" + key + "' at line " +
                                  std::to_string(line_no));
        }
    }
    cfg.model.validate();
    cfg.train.validate();
    cfg.split.validate();
    if (cfg.vocab_size < 3) throw InvalidArgument("config: vocab_size must be >= 3");
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("config: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "dataset = " << cfg.dataset.string() << '\n';
    out << "dataset_format = " << cfg.dataset_format << '\n';
    out << "lexicon = " << cfg.lexicon.string() << '\n';
    out << "out = " << cfg.out.string() << '\n';
    out << "checkpoint = " << cfg.checkpoint.string() << '\n';
    out << "seeds = ";
    for (std::size_t i = 0; i < cfg.train.seeds.size(); ++i) {
        if (i) out << ',';
        out << cfg.train.seeds[i];
    }
    out << '\n';
    out << "vocab_size = " << cfg.vocab_size << '\n';
    out << "seq_len = " << cfg.model.seq_len << '\n';
    out << "d_emb = " << cfg.model.d_emb << '\n';
    out << "prompt_len = " << cfg.model.prompt_len << '\n';
    out << "d_conv = " << cfg.model.d_conv << '\n';
    out << "kernel = " << cfg.model.kernel << '\n';
    out << "pool = " << cfg.model.pool << '\n';
    out << "d_lstm = " << cfg.model.d_lstm << '\n';
    out << "keep_prob = " << fmt_num(cfg.model.keep_prob) << '\n';
    out << "lstm_input_dropout = " << fmt_num(cfg.model.lstm_input_dropout) << '\n';
    out << "ln_eps = " << fmt_num(cfg.model.ln_eps) << '\n';
    out << "batch_size = " << cfg.train.batch_size << '\n';
    out << "epochs = " << cfg.train.epochs << '\n';
    out << "lr_init = " << fmt_num(cfg.train.lr_init) << '\n';
    out << "lr_min = " << fmt_num(cfg.train.lr_min) << '\n';
    out << "weight_decay = " << fmt_num(cfg.train.weight_decay) << '\n';
    out << "beta1 = " << fmt_num(cfg.train.beta1) << '\n';
    out << "beta2 = " << fmt_num(cfg.train.beta2) << '\n';
    out << "adam_eps = " << fmt_num(cfg.train.adam_eps) << '\n';
    out << "clip_norm = " << fmt_num(cfg.train.clip_norm) << '\n';
    out << "augment_p = " << fmt_num(cfg.train.augment_p) << '\n';
    out << "augment = " << (cfg.train.augment_enabled ? "on" : "off") << '\n';
    out << "class_weighting = " << (cfg.train.class_weighting ? "on" : "off") << '\n';
    out << "split_train = " << fmt_num(cfg.split.train) << '\n';
    out << "split_val = " << fmt_num(cfg.split.val) << '\n';
    out << "split_test = " << fmt_num(cfg.split.test) << '\n';
    out << "split_seed = " << cfg.split.seed << '\n';
    out << "stratified = " << (cfg.split.stratified ? "on" : "off") << '\n';
    out << "k_per_class = " << cfg.k_per_class << '\n';
    out << "average = " << (cfg.average == Average::macro ? "macro" : "weighted") << '\n';
    out << "variant = " << cfg.variant << '\n';
    out << "n_per_class = " << cfg.n_per_class << '\n';
    out << "noise = " << fmt_num(cfg.noise) << '\n';
    return out.str();
}

}  // namespace fslhate
