#pragma once

#include <cstdint>
#include <filesystem>

#include "fslhate/model.hpp"

namespace fslhate {

// 64-bit FNV-1a; pairs checkpoints with the exact vocabulary file bytes.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

struct Checkpoint {
    ModelConfig config;
    std::uint64_t vocab_hash = 0;
    ModelParams params;
};

/// Single-file checkpoint: magic, little-endian u32 manifest length, JSON
/// manifest (format version, model config, vocab hash, named array index
/// with shapes and byte offsets), then float32 little-endian payload in
/// manifest order. Parameters are computed in 64-bit but stored as 32-bit;
/// the round-trip loss is bounded and covered by tests. Written atomically
/// (temp file + rename) so a failed run never leaves a truncated file.
void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     const ModelConfig& config, std::uint64_t vocab_hash);

Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace fslhate
