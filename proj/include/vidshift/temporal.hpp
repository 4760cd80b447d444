#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vidshift/frame.hpp"
#include "vidshift/spec.hpp"

namespace vidshift {

/// Output position j shows source frame indices[j].
struct FrameIndexMap {
  std::vector<std::uint32_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
  friend bool operator==(const FrameIndexMap&, const FrameIndexMap&) = default;
};

/// indices[j] = min(j*k, T-1).
FrameIndexMap sampling_map(std::size_t frame_count, std::size_t skip);

/// reverse(sampling_map(T, k)).
FrameIndexMap reversal_map(std::size_t frame_count, std::size_t skip);

/// Shuffles frames inside consecutive segments of `segment` frames; a short
/// tail segment is shuffled within itself.
FrameIndexMap jumbling_map(std::size_t frame_count, std::size_t segment, std::uint64_t seed);

/// Shuffles the order of segments, keeping frame order inside each. A short
/// tail segment takes part in the shuffle as-is.
FrameIndexMap box_jumbling_map(std::size_t frame_count, std::size_t segment, std::uint64_t seed);

/// indices[0] = 0; indices[t] = indices[t-1] when a uniform draw is below
/// `freeze_probability`, else t.
FrameIndexMap freezing_map(std::size_t frame_count, double freeze_probability,
                           std::uint64_t seed);

/// Throws IndexOutOfRange if any index is >= clip length.
Clip apply_index_map(const Clip& clip, const FrameIndexMap& map);

/// One persisted map: `video_id kind severity T idx_0 ... idx_{T-1}`.
struct IndexMapRecord {
  std::string video_id;
  Kind kind{};
  int severity = 1;
  FrameIndexMap map;

  friend bool operator==(const IndexMapRecord&, const IndexMapRecord&) = default;
};

std::string format_index_map(const IndexMapRecord& record);

/// Throws ParseError on malformed lines, unknown kinds or when the number of
/// indices differs from T.
IndexMapRecord parse_index_map(const std::string& line);

/// One record per line; `comment` becomes a leading '#' line. Readers skip
/// blank and '#' lines.
void write_index_maps(const std::string& path, const std::vector<IndexMapRecord>& records,
                      const std::string& comment = {});
std::vector<IndexMapRecord> read_index_maps(const std::string& path);

}  // namespace vidshift
