#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vidshift/frame.hpp"
#include "vidshift/spec.hpp"

namespace vidshift {

/// Baseline JPEG with 4:2:0 chroma subsampling (libjpeg).
std::vector<std::uint8_t> jpeg_encode(const Frame& frame, int quality);
Frame jpeg_decode(std::span<const std::uint8_t> data);
Frame jpeg_roundtrip(const Frame& frame, int quality);

enum class MpegStandard { Mpeg1, Mpeg2 };

inline constexpr int kEncodeFps = 25;

/// The encoder binary: $VIDSHIFT_ENCODER if set, otherwise "ffmpeg".
std::string default_encoder();

/// Resolves a bare name through PATH. Throws EncoderNotFound.
std::filesystem::path locate_encoder(const std::string& encoder);

/// Target bitrate in bit/s: fraction * 0.5 bit/pixel/frame * 25 fps.
std::int64_t mpeg_target_bitrate(int height, int width, double bitrate_fraction);

struct MpegJob {
  MpegStandard standard = MpegStandard::Mpeg1;
  double bitrate_fraction = 1.0;
  std::string encoder = default_encoder();
  /// Must exist; the encoded stream and stderr logs are written here.
  std::filesystem::path scratch_dir;
};

/// Everything needed to audit one encoder run.
struct MpegTrace {
  std::filesystem::path container;
  std::vector<std::string> encode_argv;
  std::vector<std::string> decode_argv;
};

struct MpegResult {
  Clip clip;
  MpegTrace trace;
};

/// Pipes raw rgb24 frames through the external encoder and decodes the stream
/// back. Errors: EncoderNotFound, EncoderFailure (stderr tail in the message),
/// FrameCountMismatch.
MpegResult mpeg_roundtrip(const Clip& clip, const MpegJob& job);

/// Decodes any container the encoder binary understands into rgb24 frames.
Clip decode_video(const std::filesystem::path& path, const std::string& encoder,
                  const std::filesystem::path& scratch_dir);

}  // namespace vidshift
