#include "vidshift/codec.hpp"

#include <jpeglib.h>
#include <unistd.h>

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "subprocess.hpp"
#include "vidshift/error.hpp"

namespace vidshift {

namespace {

struct JpegErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void on_jpeg_error(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

}  // namespace

std::vector<std::uint8_t> jpeg_encode(const Frame& frame, int quality) {
  if (quality < 1 || quality > 100) throw Error(ErrorCode::InvalidArgument, "jpeg quality must be in [1,100]");
  jpeg_compress_struct cinfo{};
  JpegErrorManager jerr{};
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = on_jpeg_error;
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    throw Error(ErrorCode::CodecFailure, std::string("jpeg encode: ") + jerr.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &size);
  cinfo.image_width = static_cast<JDIMENSION>(frame.width());
  cinfo.image_height = static_cast<JDIMENSION>(frame.height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  cinfo.dct_method = JDCT_ISLOW;
  // 4:2:0
  cinfo.comp_info[0].h_samp_factor = 2;
  cinfo.comp_info[0].v_samp_factor = 2;
  for (int i = 1; i < 3; ++i) cinfo.comp_info[i].h_samp_factor = cinfo.comp_info[i].v_samp_factor = 1;
  jpeg_start_compress(&cinfo, TRUE);
  const auto bytes = frame.bytes();
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(bytes.data() + static_cast<std::size_t>(cinfo.next_scanline) * frame.width() * 3);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  std::vector<std::uint8_t> out(buffer, buffer + size);
  jpeg_destroy_compress(&cinfo);
  std::free(buffer);
  return out;
}

Frame jpeg_decode(std::span<const std::uint8_t> data) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager jerr{};
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = on_jpeg_error;
  std::vector<std::uint8_t> pixels;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::CodecFailure, std::string("jpeg decode: ") + jerr.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data.data(), static_cast<unsigned long>(data.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&cinfo);
  const int w = static_cast<int>(cinfo.output_width);
  const int h = static_cast<int>(cinfo.output_height);
  pixels.resize(static_cast<std::size_t>(w) * h * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return Frame(h, w, std::move(pixels));
}

Frame jpeg_roundtrip(const Frame& frame, int quality) { return jpeg_decode(jpeg_encode(frame, quality)); }

std::string default_encoder() {
  if (const char* env = std::getenv("VIDSHIFT_ENCODER"); env != nullptr && *env != '\0') return env;
  return "ffmpeg";
}

std::filesystem::path locate_encoder(const std::string& encoder) {
  namespace fs = std::filesystem;
  auto executable = [](const fs::path& p) {
    std::error_code ec;
    return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
  };
  if (encoder.find('/') != std::string::npos) {
    if (executable(encoder)) return encoder;
    throw Error(ErrorCode::EncoderNotFound, "encoder '" + encoder + "' is not an executable file");
  }
  const char* path = std::getenv("PATH");
  std::istringstream dirs(path ? path : "");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    const fs::path candidate = fs::path(dir) / encoder;
    if (executable(candidate)) return candidate;
  }
  throw Error(ErrorCode::EncoderNotFound,
              "encoder '" + encoder + "' not found on PATH (set VIDSHIFT_ENCODER)");
}

std::int64_t mpeg_target_bitrate(int height, int width, double bitrate_fraction) {
  if (!(bitrate_fraction > 0.0 && bitrate_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "bitrate fraction must be in (0,1]");
  const double reference = 0.5 * double(height) * double(width) * kEncodeFps;
  return static_cast<std::int64_t>(std::llround(bitrate_fraction * reference));
}

MpegResult mpeg_roundtrip(const Clip& clip, const MpegJob& job) {
  clip.validate();
  const auto encoder = locate_encoder(job.encoder).string();
  const int h = clip.height();
  const int w = clip.width();
  const std::int64_t bitrate = mpeg_target_bitrate(h, w, job.bitrate_fraction);
  const bool mpeg1 = job.standard == MpegStandard::Mpeg1;
  const std::string codec = mpeg1 ? "mpeg1video" : "mpeg2video";

  MpegResult result;
  result.trace.container = job.scratch_dir / (mpeg1 ? "video.m1v" : "video.m2v");
  result.trace.encode_argv = {encoder, "-hide_banner", "-loglevel", "error", "-y",
                              "-f", "rawvideo", "-pix_fmt", "rgb24",
                              "-s", std::to_string(w) + "x" + std::to_string(h),
                              "-r", std::to_string(kEncodeFps), "-i", "-",
                              "-frames:v", std::to_string(clip.frame_count()),
                              "-c:v", codec, "-b:v", std::to_string(bitrate),
                              "-pix_fmt", "yuv420p", "-threads", "1",
                              "-flags:v", "+bitexact", "-fflags", "+bitexact",
                              "-f", codec, result.trace.container.string()};

  std::vector<std::uint8_t> raw;
  raw.reserve(clip.frame_count() * static_cast<std::size_t>(h) * w * 3);
  for (const Frame& f : clip.frames) raw.insert(raw.end(), f.bytes().begin(), f.bytes().end());

  const auto enc_log = job.scratch_dir / "encode.stderr";
  const auto enc = detail::run_process(result.trace.encode_argv, raw, false, enc_log);
  if (enc.exit_code != 0)
    throw Error(ErrorCode::EncoderFailure, "encode exited with " + std::to_string(enc.exit_code) + ": " +
                                               detail::file_tail(enc_log));

  result.trace.decode_argv = {encoder, "-hide_banner", "-loglevel", "error", "-nostdin",
                              "-i", result.trace.container.string(), "-vsync", "passthrough", "-f", "rawvideo",
                              "-pix_fmt", "rgb24", "-threads", "1", "-"};
  const auto dec_log = job.scratch_dir / "decode.stderr";
  const auto dec = detail::run_process(result.trace.decode_argv, {}, true, dec_log);
  if (dec.exit_code != 0)
    throw Error(ErrorCode::EncoderFailure, "decode exited with " + std::to_string(dec.exit_code) + ": " +
                                               detail::file_tail(dec_log));

  const std::size_t frame_bytes = static_cast<std::size_t>(h) * w * 3;
  if (dec.stdout_bytes.size() % frame_bytes != 0 || dec.stdout_bytes.size() / frame_bytes != clip.frame_count())
    throw Error(ErrorCode::FrameCountMismatch,
                "decoded " + std::to_string(dec.stdout_bytes.size() / frame_bytes) + " frames (+" +
                    std::to_string(dec.stdout_bytes.size() % frame_bytes) + " bytes), expected " +
                    std::to_string(clip.frame_count()));
  result.clip.id = clip.id;
  for (std::size_t t = 0; t < clip.frame_count(); ++t) {
    const auto* begin = dec.stdout_bytes.data() + t * frame_bytes;
    result.clip.frames.emplace_back(h, w, std::vector<std::uint8_t>(begin, begin + frame_bytes));
  }
  return result;
}

}  // namespace vidshift
