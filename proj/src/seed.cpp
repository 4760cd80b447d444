#include "vidshift/seed.hpp"

#include <vector>

namespace vidshift {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(const SeedContext& ctx, std::string_view video_id, Kind kind,
                          int severity, std::optional<std::uint32_t> frame_idx) {
  std::vector<std::uint8_t> buf;
  buf.reserve(8 + video_id.size() + 24 + 6);
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(ctx.master_seed >> (8 * i)));
  buf.insert(buf.end(), video_id.begin(), video_id.end());
  buf.push_back(0);
  const auto kind_name = name(kind);
  buf.insert(buf.end(), kind_name.begin(), kind_name.end());
  buf.push_back(0);
  buf.push_back(static_cast<std::uint8_t>(severity));
  buf.push_back(frame_idx ? 1 : 0);
  if (frame_idx)
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(*frame_idx >> (8 * i)));
  return mix64(fnv1a64(buf));
}

}  // namespace vidshift
