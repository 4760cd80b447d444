#include "vidshift/protocol.hpp"

#include <algorithm>

#include "vidshift/error.hpp"

namespace vidshift {

void ProtocolConfig::validate() const {
  if (temporal_crops < 1) throw Error(ErrorCode::InvalidArgument, "temporal_crops must be >= 1");
  if (clip_len < 1) throw Error(ErrorCode::InvalidArgument, "clip_len must be >= 1");
  if (frame_stride < 1) throw Error(ErrorCode::InvalidArgument, "frame_stride must be >= 1");
  if (crop_size < 1) throw Error(ErrorCode::InvalidArgument, "crop_size must be >= 1");
}

std::optional<ProtocolConfig> protocol_preset(std::string_view name) {
  ProtocolConfig c;
  if (name == "kinetics10") c.temporal_crops = 10;
  else if (name == "ucf5" || name == "hmdb5") c.temporal_crops = 5;
  else if (name == "ssv2-1") c.temporal_crops = 1;
  else return std::nullopt;
  return c;
}

std::optional<ProtocolConfig> with_model_sampling(ProtocolConfig base, std::string_view model) {
  struct Sampling {
    std::string_view model;
    std::size_t frames, stride;
  };
  static constexpr Sampling table[] = {
      {"r3d", 8, 8}, {"i3d", 8, 8}, {"slowfast", 32, 2}, {"x3d", 16, 5}, {"mvit", 16, 4}, {"timesformer", 8, 32},
  };
  for (const auto& s : table)
    if (s.model == model) {
      base.clip_len = s.frames;
      base.frame_stride = s.stride;
      return base;
    }
  return std::nullopt;
}

std::size_t crop_span(std::size_t clip_len, std::size_t stride) { return (clip_len - 1) * stride + 1; }

std::vector<std::size_t> temporal_crop_starts(std::size_t frame_count, std::size_t crops,
                                              std::size_t clip_len, std::size_t stride) {
  if (frame_count < 1) throw Error(ErrorCode::InvalidArgument, "frame count must be >= 1");
  if (crops < 1 || clip_len < 1 || stride < 1)
    throw Error(ErrorCode::InvalidArgument, "crops, clip_len and stride must be >= 1");
  const std::size_t span = crop_span(clip_len, stride);
  const std::size_t room = frame_count > span ? frame_count - span : 0;
  if (crops == 1) return {room / 2};
  std::vector<std::size_t> starts(crops);
  const std::size_t denom = crops - 1;
  // round(i * room / denom), halves rounded up
  for (std::size_t i = 0; i < crops; ++i) starts[i] = (2 * i * room + denom) / (2 * denom);
  return starts;
}

std::vector<std::size_t> crop_frame_indices(std::size_t frame_count, std::size_t start,
                                            std::size_t clip_len, std::size_t stride) {
  std::vector<std::size_t> idx(clip_len);
  for (std::size_t i = 0; i < clip_len; ++i) idx[i] = std::min(start + i * stride, frame_count - 1);
  return idx;
}

Frame center_crop(const Frame& frame, int size, int resize_to) {
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "crop size must be >= 1");
  const Frame* src = &frame;
  Frame resized;
  if (std::min(frame.height(), frame.width()) < size) {
    if (resize_to < size)
      throw Error(ErrorCode::FrameTooSmall, std::to_string(frame.width()) + "x" +
                                                std::to_string(frame.height()) + " frame cannot yield a " +
                                                std::to_string(size) + " crop");
    resized = resize_shorter_side(frame, resize_to);
    src = &resized;
  }
  return crop(*src, (src->height() - size) / 2, (src->width() - size) / 2, size, size);
}

std::vector<Clip> protocol_views(const Clip& clip, const ProtocolConfig& config) {
  config.validate();
  clip.validate();
  std::vector<Clip> views;
  for (std::size_t start : temporal_crop_starts(clip.frame_count(), config.temporal_crops, config.clip_len,
                                                config.frame_stride)) {
    Clip view{clip.id, {}};
    for (std::size_t i : crop_frame_indices(clip.frame_count(), start, config.clip_len, config.frame_stride))
      view.frames.push_back(center_crop(clip.frames[i], config.crop_size, config.resize_size));
    views.push_back(std::move(view));
  }
  return views;
}

}  // namespace vidshift
