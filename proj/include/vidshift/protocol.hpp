#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vidshift/frame.hpp"

namespace vidshift {

struct ProtocolConfig {
  std::size_t temporal_crops = 10;
  std::size_t clip_len = 8;
  std::size_t frame_stride = 8;
  int crop_size = 224;
  int resize_size = 256;

  void validate() const;
  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

/// kinetics10, ucf5, hmdb5, ssv2-1. clip_len/stride come from the model
/// defaults (8/8) and can be replaced per model with `model_sampling`.
std::optional<ProtocolConfig> protocol_preset(std::string_view name);

/// Frames and stride per crop for r3d, i3d, slowfast, x3d, mvit, timesformer.
std::optional<ProtocolConfig> with_model_sampling(ProtocolConfig base, std::string_view model);

/// (clip_len - 1) * stride + 1.
std::size_t crop_span(std::size_t clip_len, std::size_t stride);

/// Endpoint-inclusive uniform spacing of n windows of length `span` over T
/// frames; a single window is centred.
std::vector<std::size_t> temporal_crop_starts(std::size_t frame_count, std::size_t crops,
                                              std::size_t clip_len, std::size_t stride);

/// Frame indices of one crop, reads past the end clamped to T-1.
std::vector<std::size_t> crop_frame_indices(std::size_t frame_count, std::size_t start,
                                            std::size_t clip_len, std::size_t stride);

/// Centred size x size window. When the frame is smaller than `size` its
/// shorter side is first resized to `resize_to`; with resize_to < size
/// (or 0) that case throws FrameTooSmall instead.
Frame center_crop(const Frame& frame, int size, int resize_to = 256);

/// Every temporal crop of the clip, each frame centre-cropped.
std::vector<Clip> protocol_views(const Clip& clip, const ProtocolConfig& config);

}  // namespace vidshift
