#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "vidshift/camera.hpp"
#include "vidshift/codec.hpp"
#include "vidshift/frame.hpp"
#include "vidshift/ladder.hpp"
#include "vidshift/seed.hpp"
#include "vidshift/spec.hpp"
#include "vidshift/temporal.hpp"

namespace vidshift {

struct ApplyOptions {
  /// nullptr selects SeverityLadder::defaults().
  const SeverityLadder* ladder = nullptr;
  /// Reuse the frame-0 noise seed on every frame.
  bool consistent_noise = false;
  GeometryParams geometry;
  std::string encoder = default_encoder();
  /// Scratch space for MPEG jobs; a private temporary directory when empty.
  std::filesystem::path scratch_dir;
};

struct ApplyResult {
  Clip clip;
  std::optional<FrameIndexMap> index_map;  // temporal kinds
  std::optional<MpegTrace> mpeg;           // mpeg kinds
};

/// The index map a temporal spec produces for a T-frame clip. Throws
/// UnsupportedSpec for non-temporal kinds.
FrameIndexMap temporal_map(const PerturbationSpec& spec, std::size_t frame_count,
                           const SeedScope& seeds, const SeverityLadder& ladder);

/// Dispatches `spec` onto the clip. All randomness comes from
/// derive_seed(ctx, clip.id, kind, severity[, frame]).
ApplyResult apply_traced(const PerturbationSpec& spec, const Clip& clip, const SeedContext& ctx,
                         const ApplyOptions& options = {});

inline Clip apply(const PerturbationSpec& spec, const Clip& clip, const SeedContext& ctx,
                  const ApplyOptions& options = {}) {
  return apply_traced(spec, clip, ctx, options).clip;
}

}  // namespace vidshift
