#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "vidshift/spec.hpp"

namespace vidshift {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SeedContext {
  std::uint64_t master_seed = 0;
};

/// Hashes the canonical encoding
///   master_seed (u64 LE) | video_id (UTF-8) | 0x00 | kind name | 0x00 |
///   severity (u8) | has_frame (u8) | frame_idx (u32 LE, only if present)
/// with FNV-1a 64 and finishes with mix64.
std::uint64_t derive_seed(const SeedContext& ctx, std::string_view video_id, Kind kind,
                          int severity, std::optional<std::uint32_t> frame_idx = std::nullopt);

/// The seeds that belong to one (video, kind, severity) job.
struct SeedScope {
  SeedContext ctx;
  std::string video_id;
  Kind kind{};
  int severity = 1;

  std::uint64_t clip_seed() const { return derive_seed(ctx, video_id, kind, severity); }
  std::uint64_t frame_seed(std::uint32_t t) const {
    return derive_seed(ctx, video_id, kind, severity, t);
  }
};

}  // namespace vidshift
