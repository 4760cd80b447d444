#include "vidshift/apply.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>

#include "vidshift/error.hpp"
#include "vidshift/photometric.hpp"

namespace vidshift {

namespace fs = std::filesystem;

namespace {

std::size_t as_count(double v, std::string_view what) {
  if (!(v >= 1.0) || v != std::floor(v))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

int as_int(double v, std::string_view what) {
  if (v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be an integer");
  return static_cast<int>(v);
}

template <typename F>
Clip per_frame(const Clip& clip, F&& f) {
  Clip out{clip.id, {}};
  out.frames.reserve(clip.frames.size());
  for (std::size_t t = 0; t < clip.frames.size(); ++t)
    out.frames.push_back(f(clip.frames[t], static_cast<std::uint32_t>(t)));
  return out;
}

class ScratchDir {
 public:
  explicit ScratchDir(const fs::path& requested) {
    if (!requested.empty()) {
      path_ = requested;
      fs::create_directories(path_);
      return;
    }
    static std::atomic<unsigned> counter{0};
    path_ = fs::temp_directory_path() /
            ("vidshift-mpeg-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
    owned_ = true;
  }
  ~ScratchDir() {
    std::error_code ec;
    if (owned_) fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  bool owned_ = false;
};

}  // namespace

FrameIndexMap temporal_map(const PerturbationSpec& spec, std::size_t frame_count, const SeedScope& seeds,
                           const SeverityLadder& ladder) {
  validate(spec);
  const ParamSet& p = ladder.at(spec.kind, spec.severity);
  switch (spec.kind) {
    case Kind::Sampling: return sampling_map(frame_count, as_count(p.get("skip"), "skip"));
    case Kind::Reversal: return reversal_map(frame_count, as_count(p.get("skip"), "skip"));
    case Kind::Jumbling:
      return jumbling_map(frame_count, as_count(p.get("segment"), "segment"), seeds.clip_seed());
    case Kind::BoxJumbling:
      return box_jumbling_map(frame_count, as_count(p.get("segment"), "segment"), seeds.clip_seed());
    case Kind::Freezing: return freezing_map(frame_count, p.get("p"), seeds.clip_seed());
    default: break;
  }
  throw Error(ErrorCode::UnsupportedSpec, std::string(name(spec.kind)) + " is not a temporal kind");
}

ApplyResult apply_traced(const PerturbationSpec& spec, const Clip& clip, const SeedContext& ctx,
                         const ApplyOptions& options) {
  validate(spec);
  clip.validate();
  const SeverityLadder& ladder = options.ladder ? *options.ladder : SeverityLadder::defaults();
  const ParamSet& p = ladder.at(spec.kind, spec.severity);
  const SeedScope seeds{ctx, clip.id, spec.kind, spec.severity};
  auto noise_seed = [&](std::uint32_t t) { return seeds.frame_seed(options.consistent_noise ? 0 : t); };

  ApplyResult result;
  switch (spec.kind) {
    case Kind::Gaussian: {
      const double sigma = p.get("sigma");
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t t) { return gaussian_noise(f, sigma, noise_seed(t)); });
      break;
    }
    case Kind::Shot: {
      const double lambda = p.get("lambda");
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t t) { return shot_noise(f, lambda, noise_seed(t)); });
      break;
    }
    case Kind::Impulse: {
      const double prob = p.get("p");
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t t) { return impulse_noise(f, prob, noise_seed(t)); });
      break;
    }
    case Kind::Speckle: {
      const double sigma = p.get("sigma");
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t t) { return speckle_noise(f, sigma, noise_seed(t)); });
      break;
    }
    case Kind::Defocus: {
      const int radius = as_int(p.get("radius"), "defocus radius");
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t) { return defocus_blur(f, radius); });
      break;
    }
    case Kind::Motion: {
      const int radius = as_int(p.get("radius"), "motion radius");
      const double sigma = p.get("sigma");
      const double angle = motion_blur_angle(seeds.clip_seed());
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t) { return motion_blur(f, radius, sigma, angle); });
      break;
    }
    case Kind::Zoom: {
      const double max_zoom = p.get("max_zoom");
      const double step = p.get("step");
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t) { return zoom_blur(f, max_zoom, step); });
      break;
    }
    case Kind::Jpeg: {
      const int quality = as_int(p.get("quality"), "jpeg quality");
      result.clip = per_frame(clip, [&](const Frame& f, std::uint32_t) { return jpeg_roundtrip(f, quality); });
      break;
    }
    case Kind::Mpeg1:
    case Kind::Mpeg2: {
      ScratchDir scratch(options.scratch_dir);
      MpegJob job{spec.kind == Kind::Mpeg1 ? MpegStandard::Mpeg1 : MpegStandard::Mpeg2,
                  p.get("bitrate_fraction"), options.encoder, scratch.path()};
      MpegResult mpeg = mpeg_roundtrip(clip, job);
      result.clip = std::move(mpeg.clip);
      result.mpeg = std::move(mpeg.trace);
      break;
    }
    case Kind::Sampling:
    case Kind::Reversal:
    case Kind::Jumbling:
    case Kind::BoxJumbling:
    case Kind::Freezing: {
      result.index_map = temporal_map(spec, clip.frame_count(), seeds, ladder);
      result.clip = apply_index_map(clip, *result.index_map);
      break;
    }
    case Kind::StaticRotation: result.clip = static_rotation(clip, p.get("angle")); break;
    case Kind::RandomRotation: result.clip = random_rotation(clip, p.get("bound"), seeds); break;
    case Kind::Translation:
      result.clip = translation_crop(clip, as_int(p.get("jitter"), "translation jitter"), seeds, options.geometry);
      break;
    default: throw Error(ErrorCode::UnsupportedSpec, "unknown kind");
  }
  return result;
}

}  // namespace vidshift
