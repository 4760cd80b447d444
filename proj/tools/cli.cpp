#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vidshift/apply.hpp"
#include "vidshift/bench.hpp"
#include "vidshift/error.hpp"
#include "vidshift/image_io.hpp"
#include "vidshift/ladder.hpp"
#include "vidshift/metrics.hpp"
#include "vidshift/protocol.hpp"
#include "vidshift/report.hpp"

namespace vidshift::cli {

namespace fs = std::filesystem;

namespace {

/// Bad flag values found after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string kinds_footer() {
  std::string text = "Perturbation kinds by category:\n";
  for (Category c : kAllCategories) {
    text += "  " + std::string(name(c)) + ":";
    for (Kind k : kinds_in(c)) text += " " + std::string(name(k));
    text += "\n";
  }
  text += "\nSpec filters (--only) take a comma list of categories, kinds or kind:severity.\n"
          "Protocol presets: kinetics10, ucf5, hmdb5, ssv2-1, custom.\n"
          "Exit status: 0 success, 1 processing failure, 2 usage error.\n"
          "Environment: VIDSHIFT_ENCODER names the ffmpeg binary.";
  return text;
}

SeverityLadder load_ladder(const std::string& path) {
  return path.empty() ? SeverityLadder::defaults() : SeverityLadder::load(path);
}

struct ProtocolArgs {
  std::string preset = "kinetics10";
  std::string model;
  std::size_t crops = 10;
  std::size_t clip_len = 8;
  std::size_t stride = 8;
  int crop_size = 224;
  int resize_size = 256;

  void add(CLI::App* app) {
    app->add_option("--preset", preset, "Evaluation protocol preset")
        ->check(CLI::IsMember({"kinetics10", "ucf5", "hmdb5", "ssv2-1", "custom"}))
        ->capture_default_str();
    app->add_option("--model", model, "Use a model's frames/stride (r3d, i3d, slowfast, x3d, mvit, timesformer)");
    app->add_option("--crops", crops, "Temporal crops (custom preset)")->capture_default_str();
    app->add_option("--clip-len", clip_len, "Frames per crop (custom preset)")->capture_default_str();
    app->add_option("--stride", stride, "Frame stride (custom preset)")->capture_default_str();
    app->add_option("--crop-size", crop_size, "Spatial crop size")->capture_default_str();
    app->add_option("--resize-size", resize_size, "Shorter side before cropping")->capture_default_str();
  }

  ProtocolConfig resolve() const {
    ProtocolConfig config;
    if (preset == "custom") {
      config.temporal_crops = crops;
      config.clip_len = clip_len;
      config.frame_stride = stride;
    } else {
      config = *protocol_preset(preset);
    }
    if (!model.empty()) {
      const auto with = with_model_sampling(config, model);
      if (!with) throw UsageError("unknown model '" + model + "'");
      config = *with;
    }
    config.crop_size = crop_size;
    config.resize_size = resize_size;
    config.validate();
    return config;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vidshift: video robustness benchmark generation and scoring", "vidshift"};
  app.footer(kinds_footer());
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  // perturb
  auto* perturb = app.add_subcommand("perturb", "Apply one perturbation to one clip");
  std::string p_kind, p_ladders, p_encoder = default_encoder(), p_video_id;
  int p_severity = 0;
  std::uint64_t seed = 0;
  fs::path p_in, p_out;
  bool consistent_noise = false;
  int p_crop = 224, p_resize = 256;
  perturb->add_option("--kind", p_kind, "Perturbation kind")->required();
  perturb->add_option("--severity", p_severity, "Severity 1..5")->required()->check(CLI::Range(1, 5));
  perturb->add_option("--seed", seed, "Master seed")->capture_default_str();
  perturb->add_option("--video-id", p_video_id, "Id used for seed derivation (default: input name)");
  perturb->add_option("--ladders", p_ladders, "Severity ladder override file");
  perturb->add_flag("--consistent-noise", consistent_noise, "Reuse one noise draw on every frame");
  perturb->add_option("--encoder", p_encoder, "ffmpeg binary for mpeg kinds and video input");
  perturb->add_option("--crop-size", p_crop, "Translation crop size")->capture_default_str();
  perturb->add_option("--resize-size", p_resize, "Translation resize size")->capture_default_str();
  perturb->add_option("input", p_in, "Frame directory or video file")->required();
  perturb->add_option("output", p_out, "Output directory")->required();

  // build-bench
  auto* build = app.add_subcommand("build-bench", "Build the perturbed benchmark for a test list");
  fs::path b_list, b_root;
  std::string b_only, b_ladders, b_encoder = default_encoder();
  std::size_t workers = 1;
  bool dry_run = false, strict = false, b_consistent = false;
  ProtocolArgs b_protocol;
  build->add_option("--seed", seed, "Master seed")->capture_default_str();
  build->add_option("--only", b_only, "Restrict to a spec filter");
  build->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  build->add_flag("--dry-run", dry_run, "Write a manifest of planned rows only");
  build->add_flag("--strict", strict, "Exit 1 if any row failed");
  build->add_option("--ladders", b_ladders, "Severity ladder override file");
  build->add_flag("--consistent-noise", b_consistent, "Reuse one noise draw on every frame");
  build->add_option("--encoder", b_encoder, "ffmpeg binary");
  b_protocol.add(build);
  build->add_option("test_list", b_list, "CSV video_id,path,label")->required();
  build->add_option("out_root", b_root, "Benchmark root")->required();

  // score
  auto* score = app.add_subcommand("score", "Compute accuracy and robustness scores from predictions");
  fs::path s_in, s_out = "scores.csv";
  bool allow_partial = false;
  score->add_option("predictions", s_in, "Prediction CSV")->required();
  score->add_option("-o,--output", s_out, "Scores CSV")->capture_default_str();
  score->add_flag("--allow-partial", allow_partial, "Aggregate over available severities");

  // report
  auto* report = app.add_subcommand("report", "Emit markdown tables and plot series from scores");
  fs::path r_in, r_dir = ".";
  report->add_option("scores", r_in, "scores.csv")->required();
  report->add_option("-o,--out-dir", r_dir, "Output directory")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Re-check a benchmark's files against its manifest");
  fs::path v_in;
  verify->add_option("manifest", v_in, "manifest.jsonl or the benchmark root")->required();

  // dump-ladders
  auto* dump = app.add_subcommand("dump-ladders", "Print the severity ladder configuration");
  std::string d_ladders;
  fs::path d_out;
  dump->add_option("--ladders", d_ladders, "Severity ladder override file");
  dump->add_option("-o,--output", d_out, "Write to a file instead of stdout");

  auto usage = [&](const std::string& message) {
    err << "error: " << message << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << sub->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  try {
    if (perturb->parsed()) {
      const auto kind = parse_kind(p_kind);
      if (!kind) return usage("unknown kind '" + p_kind + "'");
      const PerturbationSpec spec{*kind, p_severity};
      const SeverityLadder ladder = load_ladder(p_ladders);
      const std::string id = p_video_id.empty() ? p_in.filename().string() : p_video_id;
      Clip clip = load_clip(p_in, id, p_encoder);
      clip.id = id;

      ApplyOptions options;
      options.ladder = &ladder;
      options.consistent_noise = consistent_noise;
      options.geometry = {p_crop, p_resize};
      options.encoder = p_encoder;
      fs::create_directories(p_out);
      if (is_mpeg(*kind)) options.scratch_dir = p_out / ".scratch";
      const ApplyResult result = apply_traced(spec, clip, SeedContext{seed}, options);
      write_frames(p_out, result.clip);
      if (result.index_map)
        write_index_maps((p_out / "index_map.txt").string(),
                         {IndexMapRecord{id, *kind, p_severity, *result.index_map}},
                         to_string(spec) + " " + to_string(ladder.at(*kind, p_severity)));
      if (result.mpeg) {
        fs::rename(result.mpeg->container, p_out / result.mpeg->container.filename());
        fs::remove_all(options.scratch_dir);
      }
      out << p_out.string() << "\n";
      return kExitOk;
    }

    if (build->parsed()) {
      BuildOptions options;
      if (!b_only.empty()) {
        try {
          options.specs = filter_specs(b_only);
        } catch (const Error& e) {
          return usage(e.what());
        }
      }
      options.workers = workers;
      options.dry_run = dry_run;
      options.ladder = load_ladder(b_ladders);
      options.protocol = b_protocol.resolve();
      options.consistent_noise = b_consistent;
      options.encoder = b_encoder;
      options.log = [&](const std::string& msg) { err << msg << "\n"; };
      const TestList tests = TestList::read(b_list);
      const BuildSummary summary = build_benchmark(tests, SeedContext{seed}, b_root, options);
      out << "manifest: " << (b_root / kManifestName).string() << "\n"
          << "rows: " << summary.manifest.rows.size() << ", built: " << summary.built
          << ", skipped: " << summary.skipped << ", failed: " << summary.failed
          << ", planned: " << summary.planned << "\n";
      return strict && summary.failed > 0 ? kExitFailure : kExitOk;
    }

    if (score->parsed()) {
      const auto records = read_predictions_file(s_in.string());
      const auto tables = accuracy(records);
      AggregateOptions options;
      options.allow_partial = allow_partial;
      std::vector<ScoreRow> rows;
      for (const auto& [model, table] : tables) {
        const RobustnessScore rs = score_model(table, options);
        if (!rs.missing.empty()) {
          err << "warning: " << model << ": " << rs.missing.size() << " missing cells:";
          for (const auto& [k, s] : rs.missing) err << " " << to_string(PerturbationSpec{k, s});
          err << "\n";
        }
        const auto model_rows = score_rows(model, table, rs);
        rows.insert(rows.end(), model_rows.begin(), model_rows.end());
      }
      std::ostringstream text;
      write_scores(text, rows);
      write_text(s_out, text.str());
      out << s_out.string() << "\n";
      return kExitOk;
    }

    if (report->parsed()) {
      std::ifstream in(r_in);
      if (!in) throw Error(ErrorCode::IoError, "cannot open " + r_in.string());
      const auto rows = read_scores(in);
      fs::create_directories(r_dir);
      const std::string table = robustness_markdown(rows);
      write_text(r_dir / "robustness.md", table);
      write_text(r_dir / "severity_series.csv", severity_series_csv(rows));
      write_text(r_dir / "category_series.csv", category_series_csv(rows));
      out << table;
      return kExitOk;
    }

    if (verify->parsed()) {
      const fs::path manifest = fs::is_directory(v_in) ? v_in / kManifestName : v_in;
      const VerifyReport rep = verify_benchmark(manifest);
      auto list = [&](const char* what, const std::vector<VerifyIssue>& issues) {
        for (const auto& i : issues)
          out << what << " " << i.video_id << " " << i.spec << ": " << i.reason << "\n";
      };
      list("missing", rep.missing);
      list("corrupt", rep.corrupt);
      list("failed", rep.failed);
      out << "checked: " << rep.checked << ", missing: " << rep.missing.size()
          << ", corrupt: " << rep.corrupt.size() << ", failed: " << rep.failed.size() << "\n";
      return rep.ok() ? kExitOk : kExitFailure;
    }

    if (dump->parsed()) {
      const std::string text = load_ladder(d_ladders).dump();
      if (d_out.empty()) out << text;
      else write_text(d_out, text);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return usage("no subcommand");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace vidshift::cli
