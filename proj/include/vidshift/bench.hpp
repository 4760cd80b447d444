#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vidshift/apply.hpp"
#include "vidshift/ladder.hpp"
#include "vidshift/protocol.hpp"
#include "vidshift/seed.hpp"
#include "vidshift/spec.hpp"

namespace vidshift {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kManifestName = "manifest.jsonl";

struct TestEntry {
  std::string video_id;
  std::filesystem::path path;
  int label = 0;
};

struct TestList {
  std::vector<TestEntry> entries;

  /// CSV `video_id,path,label`. Relative paths resolve against the list's
  /// directory. Throws ParseError on duplicate ids or malformed rows.
  static TestList read(const std::filesystem::path& csv);
};

enum class RowStatus { Ok, Failed, Planned };

struct ManifestHeader {
  std::uint64_t master_seed = 0;
  std::string ladder_version;
  std::string tool_version{kToolVersion};
  ProtocolConfig protocol;
};

/// Paths are relative to the benchmark root.
struct ManifestRow {
  std::string video_id;
  Kind kind{};
  int severity = 1;
  RowStatus status = RowStatus::Planned;
  std::string path;       // <kind>/<severity>/<video_id>
  std::string index_map;  // temporal kinds: path of the index-map file
  std::string source;     // temporal kinds: clean frames the map points into
  std::string container;  // mpeg kinds: the encoded stream
  std::optional<std::uint64_t> checksum;
  std::size_t frame_count = 0;
  std::string error;
  std::vector<std::string> encoder_argv;  // mpeg kinds
};

struct BenchManifest {
  ManifestHeader header;
  std::vector<ManifestRow> rows;
};

/// JSON lines: one header object, then one object per row.
BenchManifest read_manifest(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_manifest_atomic(const std::filesystem::path& path, const BenchManifest& manifest);

std::string row_directory(Kind kind, int severity, const std::string& video_id);

struct BuildOptions {
  std::vector<PerturbationSpec> specs = enumerate_specs();
  std::size_t workers = 1;
  /// Plan rows without reading videos or writing frames.
  bool dry_run = false;
  SeverityLadder ladder = SeverityLadder::defaults();
  ProtocolConfig protocol;
  bool consistent_noise = false;
  std::string encoder = default_encoder();
  std::function<void(const std::string&)> log;
};

struct BuildSummary {
  std::size_t built = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::size_t planned = 0;
  BenchManifest manifest;
};

/// Produces every (video x spec) output under out_root and maintains
/// out_root/manifest.jsonl. Rows whose files on disk still match their
/// checksum are skipped. A video that fails to decode marks its rows failed
/// and the build moves on. Throws ManifestConflict when an existing manifest
/// was built with another master seed or ladder version.
BuildSummary build_benchmark(const TestList& tests, const SeedContext& ctx,
                             const std::filesystem::path& out_root,
                             const BuildOptions& options = {});

struct VerifyIssue {
  std::size_t row = 0;
  std::string video_id;
  std::string spec;
  std::string reason;
};

struct VerifyReport {
  std::size_t checked = 0;
  std::vector<VerifyIssue> missing;
  std::vector<VerifyIssue> corrupt;
  std::vector<VerifyIssue> failed;  // rows the build itself marked failed

  bool ok() const { return missing.empty() && corrupt.empty() && failed.empty(); }
};

/// Re-reads every completed row's files and recomputes its checksum.
VerifyReport verify_benchmark(const std::filesystem::path& manifest_path);

/// The checksum a row's on-disk files hash to; nullopt when a file is missing.
/// Throws DecodeFailure on unreadable files.
std::optional<std::uint64_t> checksum_on_disk(const std::filesystem::path& root,
                                              const ManifestRow& row);

}  // namespace vidshift
