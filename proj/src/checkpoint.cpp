#include "fslhate/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "fslhate/errors.hpp"

namespace fslhate {

namespace {

constexpr char kMagic[8] = {'F', 'S', 'L', 'H', 'C', 'K', 'P', '1'};
constexpr int kFormatVersion = 1;

void put_u32_le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    return std::strtoull(s.c_str(), nullptr, 16);
}

nlohmann::json config_to_json(const ModelConfig& c) {
    nlohmann::json j;
    j["d_emb"] = c.d_emb;
    j["prompt_len"] = c.prompt_len;
    j["d_conv"] = c.d_conv;
    j["kernel"] = c.kernel;
    j["pool"] = c.pool;
    j["d_lstm"] = c.d_lstm;
    j["n_classes"] = c.n_classes;
    j["keep_prob"] = c.keep_prob;
    j["lstm_input_dropout"] = c.lstm_input_dropout;
    j["seq_len"] = c.seq_len;
    j["ln_eps"] = c.ln_eps;
    j["use_attention"] = c.use_attention;
    return j;
}

ModelConfig config_from_json(const nlohmann::json& j) {
    ModelConfig c;
    c.d_emb = j.at("d_emb").get<std::size_t>();
    c.prompt_len = j.at("prompt_len").get<std::size_t>();
    c.d_conv = j.at("d_conv").get<std::size_t>();
    c.kernel = j.at("kernel").get<std::size_t>();
    c.pool = j.at("pool").get<std::size_t>();
    c.d_lstm = j.at("d_lstm").get<std::size_t>();
    c.n_classes = j.at("n_classes").get<std::size_t>();
    c.keep_prob = j.at("keep_prob").get<double>();
    c.lstm_input_dropout = j.at("lstm_input_dropout").get<double>();
    c.seq_len = j.at("seq_len").get<std::size_t>();
    c.ln_eps = j.at("ln_eps").get<double>();
    c.use_attention = j.at("use_attention").get<bool>();
    return c;
}

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const unsigned char* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("fnv1a64_file: cannot open " + path.string());
    std::uint64_t h = 14695981039346656037ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof(buf))) break;
    }
    return h;
}

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     const ModelConfig& config, std::uint64_t vocab_hash) {
    nlohmann::json manifest;
    manifest["format_version"] = kFormatVersion;
    manifest["config"] = config_to_json(config);
    manifest["vocab_hash"] = hex64(vocab_hash);

    nlohmann::json arrays = nlohmann::json::array();
    std::string payload;
    for_each_tensor(params, [&](const char* name, const Tensor& t) {
        if (t.size() == 0) return;  // absent blocks (prompt_len == 0)
        nlohmann::json entry;
        entry["name"] = name;
        entry["shape"] = t.shape;
        entry["offset"] = payload.size();
        arrays.push_back(entry);
        for (double v : t.data) {
            put_u32_le(payload, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        }
    });
    manifest["arrays"] = arrays;

    std::string header = manifest.dump();
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("save_checkpoint: cannot open " + tmp.string());
        out.write(kMagic, sizeof(kMagic));
        std::string len;
        put_u32_le(len, static_cast<std::uint32_t>(header.size()));
        out.write(len.data(), static_cast<std::streamsize>(len.size()));
        out.write(header.data(), static_cast<std::streamsize>(header.size()));
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) throw IoError("save_checkpoint: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_checkpoint: cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < sizeof(kMagic) + 4 ||
        std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
        throw ArtifactMismatch("load_checkpoint: bad magic in " + path.string());
    }
    std::uint32_t header_len = get_u32_le(bytes.data() + sizeof(kMagic));
    std::size_t header_start = sizeof(kMagic) + 4;
    if (bytes.size() < header_start + header_len) {
        throw ArtifactMismatch("load_checkpoint: truncated manifest in " + path.string());
    }

    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(bytes.begin() + static_cast<long>(header_start),
                                         bytes.begin() + static_cast<long>(header_start + header_len));
    } catch (const nlohmann::json::exception& e) {
        throw ArtifactMismatch(std::string("load_checkpoint: manifest parse error: ") + e.what());
    }
    if (manifest.value("format_version", -1) != kFormatVersion) {
        throw ArtifactMismatch("load_checkpoint: unsupported format version");
    }

    Checkpoint ckpt;
    ckpt.config = config_from_json(manifest.at("config"));
    ckpt.vocab_hash = parse_hex64(manifest.at("vocab_hash").get<std::string>());

    const unsigned char* payload = bytes.data() + header_start + header_len;
    std::size_t payload_len = bytes.size() - header_start - header_len;

    std::size_t expected = 0;
    for (const auto& entry : manifest.at("arrays")) {
        expected += 4 * numel(entry.at("shape").get<std::vector<std::size_t>>());
    }
    if (expected != payload_len) {
        throw ArtifactMismatch("load_checkpoint: payload length mismatch in " + path.string());
    }

    auto read_array = [&](const nlohmann::json& entry) {
        Tensor t{entry.at("shape").get<std::vector<std::size_t>>()};
        std::size_t offset = entry.at("offset").get<std::size_t>();
        if (offset + 4 * t.size() > payload_len) {
            throw ArtifactMismatch("load_checkpoint: array offset out of bounds");
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
            std::uint32_t raw = get_u32_le(payload + offset + 4 * i);
            t.data[i] = static_cast<double>(std::bit_cast<float>(raw));
        }
        return t;
    };

    for (const auto& entry : manifest.at("arrays")) {
        std::string name = entry.at("name").get<std::string>();
        bool known = false;
        for_each_tensor(ckpt.params, [&](const char* tname, Tensor& t) {
            if (name == tname) {
                t = read_array(entry);
                known = true;
            }
        });
        if (!known) throw ArtifactMismatch("load_checkpoint: unknown array '" + name + "'");
    }
    return ckpt;
}

}  // namespace fslhate
