#include "vidshift/bench.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vidshift/error.hpp"
#include "vidshift/image_io.hpp"
#include "vidshift/temporal.hpp"

namespace vidshift {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

void check_video_id(const std::string& id, int lineno) {
  const bool bad = id.empty() || id == "." || id == ".." ||
                   id.find_first_of("/\\ \t") != std::string::npos;
  if (bad) throw Error(ErrorCode::ParseError, "test list line " + std::to_string(lineno) + ": invalid video_id '" + id + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string_view status_name(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Failed: return "failed";
    case RowStatus::Planned: return "planned";
  }
  return "planned";
}

RowStatus parse_status(const std::string& s) {
  if (s == "ok") return RowStatus::Ok;
  if (s == "failed") return RowStatus::Failed;
  if (s == "planned") return RowStatus::Planned;
  throw Error(ErrorCode::ParseError, "manifest: unknown status '" + s + "'");
}

json header_json(const ManifestHeader& h) {
  return {{"type", "header"},
          {"master_seed", h.master_seed},
          {"ladder_version", h.ladder_version},
          {"tool_version", h.tool_version},
          {"protocol",
           {{"temporal_crops", h.protocol.temporal_crops},
            {"clip_len", h.protocol.clip_len},
            {"frame_stride", h.protocol.frame_stride},
            {"crop_size", h.protocol.crop_size},
            {"resize_size", h.protocol.resize_size}}}};
}

json row_json(const ManifestRow& r) {
  json j = {{"type", "row"},
            {"video_id", r.video_id},
            {"kind", name(r.kind)},
            {"severity", r.severity},
            {"status", status_name(r.status)},
            {"path", r.path},
            {"frames", r.frame_count}};
  if (!r.index_map.empty()) j["index_map"] = r.index_map;
  if (!r.source.empty()) j["source"] = r.source;
  if (!r.container.empty()) j["container"] = r.container;
  if (r.checksum) j["checksum"] = hex64(*r.checksum);
  if (!r.error.empty()) j["error"] = r.error;
  if (!r.encoder_argv.empty()) j["encoder_argv"] = r.encoder_argv;
  return j;
}

ManifestRow row_from_json(const json& j) {
  ManifestRow r;
  r.video_id = j.at("video_id").get<std::string>();
  const auto kind = parse_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::ParseError, "manifest: unknown kind");
  r.kind = *kind;
  r.severity = j.at("severity").get<int>();
  r.status = parse_status(j.at("status").get<std::string>());
  r.path = j.at("path").get<std::string>();
  r.frame_count = j.value("frames", std::size_t{0});
  r.index_map = j.value("index_map", std::string{});
  r.source = j.value("source", std::string{});
  r.container = j.value("container", std::string{});
  if (j.contains("checksum")) r.checksum = std::stoull(j.at("checksum").get<std::string>(), nullptr, 16);
  r.error = j.value("error", std::string{});
  if (j.contains("encoder_argv")) r.encoder_argv = j.at("encoder_argv").get<std::vector<std::string>>();
  return r;
}

using RowKey = std::tuple<std::string, Kind, int>;

RowKey key_of(const ManifestRow& r) { return {r.video_id, r.kind, r.severity}; }

ManifestRow planned_row(const std::string& video_id, const PerturbationSpec& spec) {
  ManifestRow r;
  r.video_id = video_id;
  r.kind = spec.kind;
  r.severity = spec.severity;
  r.status = RowStatus::Planned;
  r.path = row_directory(spec.kind, spec.severity, video_id);
  if (is_temporal(spec.kind)) {
    r.index_map = r.path + "/index_map.txt";
    r.source = "clean/" + video_id;
  }
  if (is_mpeg(spec.kind)) r.container = r.path + (spec.kind == Kind::Mpeg1 ? "/video.m1v" : "/video.m2v");
  return r;
}

bool row_intact(const fs::path& root, const ManifestRow& row) {
  if (row.status != RowStatus::Ok || !row.checksum) return false;
  try {
    return checksum_on_disk(root, row) == row.checksum;
  } catch (const Error&) {
    return false;
  }
}

std::string error_text(const std::exception& e) { return e.what(); }

}  // namespace

TestList TestList::read(const fs::path& csv) {
  std::ifstream in(csv);
  if (!in) throw Error(ErrorCode::IoError, "cannot open test list " + csv.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "video_id,path,label")
    throw Error(ErrorCode::ParseError, "test list must start with header 'video_id,path,label'");
  TestList list;
  std::map<std::string, int> seen;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.rfind(',');
    if (c1 == std::string::npos || c1 == c2)
      throw Error(ErrorCode::ParseError, "test list line " + std::to_string(lineno) + ": expected 3 fields");
    TestEntry e;
    e.video_id = trim(line.substr(0, c1));
    check_video_id(e.video_id, lineno);
    fs::path p = trim(line.substr(c1 + 1, c2 - c1 - 1));
    e.path = p.is_relative() ? csv.parent_path() / p : p;
    try {
      std::size_t used = 0;
      const std::string label = trim(line.substr(c2 + 1));
      e.label = std::stoi(label, &used);
      if (used != label.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "test list line " + std::to_string(lineno) + ": bad label");
    }
    if (!seen.emplace(e.video_id, lineno).second)
      throw Error(ErrorCode::ParseError, "test list line " + std::to_string(lineno) + ": duplicate video_id '" +
                                             e.video_id + "'");
    list.entries.push_back(std::move(e));
  }
  return list;
}

std::string row_directory(Kind kind, int severity, const std::string& video_id) {
  return std::string(name(kind)) + "/" + std::to_string(severity) + "/" + video_id;
}

BenchManifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open manifest " + path.string());
  BenchManifest m;
  std::string line;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        m.header.master_seed = j.at("master_seed").get<std::uint64_t>();
        m.header.ladder_version = j.at("ladder_version").get<std::string>();
        m.header.tool_version = j.at("tool_version").get<std::string>();
        const json& p = j.at("protocol");
        m.header.protocol.temporal_crops = p.at("temporal_crops").get<std::size_t>();
        m.header.protocol.clip_len = p.at("clip_len").get<std::size_t>();
        m.header.protocol.frame_stride = p.at("frame_stride").get<std::size_t>();
        m.header.protocol.crop_size = p.at("crop_size").get<int>();
        m.header.protocol.resize_size = p.at("resize_size").get<int>();
        have_header = true;
      } else if (type == "row") {
        m.rows.push_back(row_from_json(j));
      } else {
        throw Error(ErrorCode::ParseError, "unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, "manifest line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "manifest has no header line");
  return m;
}

void write_manifest_atomic(const fs::path& path, const BenchManifest& manifest) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << header_json(manifest.header).dump() << '\n';
    for (const auto& r : manifest.rows) out << row_json(r).dump() << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::optional<std::uint64_t> checksum_on_disk(const fs::path& root, const ManifestRow& row) {
  std::error_code ec;
  if (!row.container.empty() && !fs::exists(root / row.container, ec)) return std::nullopt;
  if (!row.index_map.empty()) {
    const fs::path map_path = root / row.index_map;
    if (!fs::exists(map_path, ec) || !fs::is_directory(root / row.source, ec)) return std::nullopt;
    std::vector<IndexMapRecord> records;
    try {
      records = read_index_maps(map_path.string());
    } catch (const Error& e) {
      throw Error(ErrorCode::DecodeFailure, e.what());
    }
    if (records.size() != 1) throw Error(ErrorCode::DecodeFailure, map_path.string() + ": expected one map");
    const Clip clean = read_frames(root / row.source, row.video_id);
    try {
      return pixel_checksum(apply_index_map(clean, records.front().map));
    } catch (const Error& e) {
      throw Error(ErrorCode::DecodeFailure, e.what());
    }
  }
  const fs::path dir = root / row.path;
  if (!fs::is_directory(dir, ec)) return std::nullopt;
  std::vector<Frame> frames;
  for (std::size_t t = 0; t < row.frame_count; ++t) {
    const fs::path f = dir / frame_filename(t);
    if (!fs::exists(f, ec)) return std::nullopt;
    frames.push_back(read_png(f));
  }
  if (frames.empty()) return std::nullopt;
  return pixel_checksum(frames);
}

BuildSummary build_benchmark(const TestList& tests, const SeedContext& ctx, const fs::path& out_root,
                             const BuildOptions& options) {
  auto log = [&](const std::string& msg) {
    if (options.log) options.log(msg);
  };
  options.protocol.validate();
  fs::create_directories(out_root);
  const fs::path manifest_path = out_root / kManifestName;

  BuildSummary summary;
  BenchManifest& manifest = summary.manifest;
  manifest.header.master_seed = ctx.master_seed;
  manifest.header.ladder_version = options.ladder.version();
  manifest.header.protocol = options.protocol;

  std::vector<ManifestRow> previous;
  std::map<RowKey, std::size_t> previous_index;
  if (fs::exists(manifest_path)) {
    BenchManifest old = read_manifest(manifest_path);
    if (old.header.master_seed != ctx.master_seed || old.header.ladder_version != manifest.header.ladder_version)
      throw Error(ErrorCode::ManifestConflict,
                  "existing manifest uses master_seed " + std::to_string(old.header.master_seed) + " / ladder " +
                      old.header.ladder_version + ", requested " + std::to_string(ctx.master_seed) + " / " +
                      manifest.header.ladder_version);
    previous = std::move(old.rows);
    for (std::size_t i = 0; i < previous.size(); ++i) previous_index[key_of(previous[i])] = i;
  }

  // Rows owned by this run, in test-list x spec order.
  std::vector<ManifestRow> current;
  std::map<RowKey, bool> owned;
  for (const auto& e : tests.entries)
    for (const auto& s : options.specs) owned[{e.video_id, s.kind, s.severity}] = true;

  auto assemble = [&](std::size_t videos_done) {
    BenchManifest m;
    m.header = manifest.header;
    m.rows = current;
    // Videos not yet processed keep their previous rows.
    for (std::size_t v = videos_done; v < tests.entries.size(); ++v)
      for (const auto& s : options.specs)
        if (const auto it = previous_index.find({tests.entries[v].video_id, s.kind, s.severity});
            it != previous_index.end())
          m.rows.push_back(previous[it->second]);
    for (const auto& r : previous)
      if (!owned.count(key_of(r))) m.rows.push_back(r);
    return m;
  };

  const SeverityLadder& ladder = options.ladder;
  const GeometryParams geometry{options.protocol.crop_size, options.protocol.resize_size};

  for (std::size_t vi = 0; vi < tests.entries.size(); ++vi) {
    const TestEntry& entry = tests.entries[vi];
    std::vector<ManifestRow> rows;
    std::vector<std::size_t> todo;
    for (const auto& spec : options.specs) {
      const auto it = previous_index.find({entry.video_id, spec.kind, spec.severity});
      const ManifestRow* old = it == previous_index.end() ? nullptr : &previous[it->second];
      if (options.dry_run) {
        if (old && old->status == RowStatus::Ok) {
          rows.push_back(*old);
          ++summary.skipped;
        } else {
          rows.push_back(planned_row(entry.video_id, spec));
          ++summary.planned;
        }
        continue;
      }
      if (old && row_intact(out_root, *old)) {
        rows.push_back(*old);
        ++summary.skipped;
        continue;
      }
      todo.push_back(rows.size());
      rows.push_back(planned_row(entry.video_id, spec));
    }

    if (!todo.empty()) {
      std::optional<Clip> clip;
      try {
        clip = load_clip(entry.path, entry.video_id, options.encoder);
        clip->id = entry.video_id;
        bool needs_clean = false;
        for (std::size_t i : todo) needs_clean = needs_clean || is_temporal(rows[i].kind);
        if (needs_clean) {
          const fs::path clean_dir = out_root / "clean" / entry.video_id;
          fs::remove_all(clean_dir);
          write_frames(clean_dir, *clip);
        }
      } catch (const std::exception& e) {
        log("video " + entry.video_id + ": " + error_text(e));
        for (std::size_t i : todo) {
          rows[i].status = RowStatus::Failed;
          rows[i].error = error_text(e);
        }
        clip.reset();
      }

      if (clip) {
        auto build_row = [&](std::size_t i) {
          ManifestRow& row = rows[i];
          const PerturbationSpec spec{row.kind, row.severity};
          const fs::path dir = out_root / row.path;
          const fs::path scratch = out_root / ".scratch" / row.path;
          try {
            fs::remove_all(dir);
            fs::create_directories(dir);
            ApplyOptions ao;
            ao.ladder = &ladder;
            ao.consistent_noise = options.consistent_noise;
            ao.geometry = geometry;
            ao.encoder = options.encoder;
            ao.scratch_dir = scratch;
            ApplyResult result = apply_traced(spec, *clip, ctx, ao);
            if (result.index_map) {
              write_index_maps((out_root / row.index_map).string(),
                               {IndexMapRecord{row.video_id, row.kind, row.severity, *result.index_map}},
                               to_string(spec) + " " + to_string(ladder.at(row.kind, row.severity)));
            } else {
              write_frames(dir, result.clip);
            }
            if (result.mpeg) {
              fs::rename(result.mpeg->container, out_root / row.container);
              row.encoder_argv = result.mpeg->encode_argv;
            }
            row.frame_count = result.clip.frame_count();
            row.checksum = pixel_checksum(result.clip);
            row.status = RowStatus::Ok;
          } catch (const std::exception& e) {
            row.status = RowStatus::Failed;
            row.error = error_text(e);
            row.checksum.reset();
          }
          std::error_code ec;
          fs::remove_all(scratch, ec);
        };

        const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, todo.size()));
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
          for (std::size_t k = next++; k < todo.size(); k = next++) build_row(todo[k]);
        };
        if (workers == 1) {
          worker();
        } else {
          std::vector<std::thread> pool;
          for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
          for (auto& t : pool) t.join();
        }
      }
      for (std::size_t i : todo) {
        if (rows[i].status == RowStatus::Ok) {
          ++summary.built;
        } else {
          ++summary.failed;
          log("failed " + rows[i].video_id + " " + std::string(name(rows[i].kind)) + ":" +
              std::to_string(rows[i].severity) + ": " + rows[i].error);
        }
      }
    }

    current.insert(current.end(), rows.begin(), rows.end());
    if (!options.dry_run && (vi + 1) % 8 == 0 && vi + 1 < tests.entries.size())
      write_manifest_atomic(manifest_path, assemble(vi + 1));
  }

  std::error_code ec;
  fs::remove_all(out_root / ".scratch", ec);
  manifest = assemble(tests.entries.size());
  write_manifest_atomic(manifest_path, manifest);
  return summary;
}

VerifyReport verify_benchmark(const fs::path& manifest_path) {
  const BenchManifest manifest = read_manifest(manifest_path);
  const fs::path root = manifest_path.parent_path();
  VerifyReport report;
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    const ManifestRow& row = manifest.rows[i];
    const std::string spec = to_string(PerturbationSpec{row.kind, row.severity});
    ++report.checked;
    if (row.status == RowStatus::Failed) {
      report.failed.push_back({i, row.video_id, spec, row.error});
      continue;
    }
    if (row.status == RowStatus::Planned) {
      report.missing.push_back({i, row.video_id, spec, "planned, never built"});
      continue;
    }
    try {
      const auto sum = checksum_on_disk(root, row);
      if (!sum) report.missing.push_back({i, row.video_id, spec, "output file missing"});
      else if (!row.checksum || *sum != *row.checksum)
        report.corrupt.push_back({i, row.video_id, spec, "checksum mismatch"});
    } catch (const Error& e) {
      report.corrupt.push_back({i, row.video_id, spec, e.what()});
    }
  }
  return report;
}

}  // namespace vidshift
