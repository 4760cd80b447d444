#include "vidshift/temporal.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "vidshift/error.hpp"
#include "vidshift/rng.hpp"

namespace vidshift {

namespace {

void require_length(std::size_t frame_count) {
  if (frame_count < 1) throw Error(ErrorCode::InvalidArgument, "frame count must be >= 1");
}

std::vector<std::uint32_t> iota_indices(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

}  // namespace

FrameIndexMap sampling_map(std::size_t frame_count, std::size_t skip) {
  require_length(frame_count);
  if (skip < 1) throw Error(ErrorCode::InvalidArgument, "skip rate must be >= 1");
  FrameIndexMap map;
  map.indices.resize(frame_count);
  for (std::size_t j = 0; j < frame_count; ++j)
    map.indices[j] = static_cast<std::uint32_t>(std::min(j * skip, frame_count - 1));
  return map;
}

FrameIndexMap reversal_map(std::size_t frame_count, std::size_t skip) {
  FrameIndexMap map = sampling_map(frame_count, skip);
  std::reverse(map.indices.begin(), map.indices.end());
  return map;
}

FrameIndexMap jumbling_map(std::size_t frame_count, std::size_t segment, std::uint64_t seed) {
  require_length(frame_count);
  if (segment < 1) throw Error(ErrorCode::InvalidArgument, "segment size must be >= 1");
  Rng rng(seed);
  FrameIndexMap map{iota_indices(frame_count)};
  for (std::size_t begin = 0; begin < frame_count; begin += segment) {
    const std::size_t len = std::min(segment, frame_count - begin);
    rng.shuffle(std::span(map.indices).subspan(begin, len));
  }
  return map;
}

FrameIndexMap box_jumbling_map(std::size_t frame_count, std::size_t segment, std::uint64_t seed) {
  require_length(frame_count);
  if (segment < 1) throw Error(ErrorCode::InvalidArgument, "segment size must be >= 1");
  const std::size_t segments = (frame_count + segment - 1) / segment;
  if (segments == 1) return FrameIndexMap{iota_indices(frame_count)};
  Rng rng(seed);
  std::vector<std::size_t> order(segments);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span(order));
  FrameIndexMap map;
  map.indices.reserve(frame_count);
  for (std::size_t s : order) {
    const std::size_t begin = s * segment;
    const std::size_t end = std::min(begin + segment, frame_count);
    for (std::size_t i = begin; i < end; ++i) map.indices.push_back(static_cast<std::uint32_t>(i));
  }
  return map;
}

FrameIndexMap freezing_map(std::size_t frame_count, double freeze_probability, std::uint64_t seed) {
  require_length(frame_count);
  if (!(freeze_probability >= 0.0 && freeze_probability <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "freeze probability must be in [0,1]");
  Rng rng(seed);
  FrameIndexMap map;
  map.indices.resize(frame_count);
  map.indices[0] = 0;
  for (std::size_t t = 1; t < frame_count; ++t)
    map.indices[t] = rng.uniform() < freeze_probability ? map.indices[t - 1] : static_cast<std::uint32_t>(t);
  return map;
}

Clip apply_index_map(const Clip& clip, const FrameIndexMap& map) {
  Clip out{clip.id, {}};
  out.frames.reserve(map.size());
  for (std::uint32_t idx : map.indices) {
    if (idx >= clip.frames.size())
      throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(idx) + " >= clip length " +
                                                  std::to_string(clip.frames.size()));
    out.frames.push_back(clip.frames[idx]);
  }
  return out;
}

std::string format_index_map(const IndexMapRecord& record) {
  std::string line = record.video_id + " " + std::string(name(record.kind)) + " " +
                     std::to_string(record.severity) + " " + std::to_string(record.map.size());
  for (std::uint32_t idx : record.map.indices) {
    line += ' ';
    line += std::to_string(idx);
  }
  return line;
}

IndexMapRecord parse_index_map(const std::string& line) {
  std::istringstream in(line);
  IndexMapRecord rec;
  std::string kind_name;
  long long severity = 0;
  long long count = -1;
  if (!(in >> rec.video_id >> kind_name >> severity >> count))
    throw Error(ErrorCode::ParseError, "index map: expected 'video_id kind severity T ...'");
  const auto kind = parse_kind(kind_name);
  if (!kind) throw Error(ErrorCode::ParseError, "index map: unknown kind '" + kind_name + "'");
  if (severity < kMinSeverity || severity > kMaxSeverity)
    throw Error(ErrorCode::ParseError, "index map: severity out of range");
  if (count < 1) throw Error(ErrorCode::ParseError, "index map: T must be >= 1");
  rec.kind = *kind;
  rec.severity = static_cast<int>(severity);
  std::string token;
  while (in >> token) {
    std::uint32_t v = 0;
    const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size())
      throw Error(ErrorCode::ParseError, "index map: bad index '" + token + "'");
    if (v >= static_cast<unsigned long long>(count))
      throw Error(ErrorCode::ParseError, "index map: index " + token + " >= T");
    rec.map.indices.push_back(v);
  }
  if (rec.map.size() != static_cast<std::size_t>(count))
    throw Error(ErrorCode::ParseError, "index map for '" + rec.video_id + "': declared T=" +
                                           std::to_string(count) + " but " +
                                           std::to_string(rec.map.size()) + " indices");
  return rec;
}

void write_index_maps(const std::string& path, const std::vector<IndexMapRecord>& records,
                      const std::string& comment) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const auto& r : records) out << format_index_map(r) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path);
}

std::vector<IndexMapRecord> read_index_maps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::vector<IndexMapRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_index_map(line));
  }
  return out;
}

}  // namespace vidshift
