#include "vidshift/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <atomic>

#include <unistd.h>

#include "subprocess.hpp"
#include "vidshift/codec.hpp"
#include "vidshift/error.hpp"

namespace vidshift {

namespace fs = std::filesystem;

Frame read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw Error(ErrorCode::DecodeFailure, path.string() + ": " + image.message);
  image.format = PNG_FORMAT_RGB;
  if (image.width < 1 || image.height < 1) {
    png_image_free(&image);
    throw Error(ErrorCode::DecodeFailure, path.string() + ": empty image");
  }
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::DecodeFailure, path.string() + ": " + msg);
  }
  return Frame(static_cast<int>(image.height), static_cast<int>(image.width), std::move(pixels));
}

void write_png(const fs::path& path, const Frame& frame) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width());
  image.height = static_cast<png_uint_32>(frame.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, frame.bytes().data(), 0, nullptr))
    throw Error(ErrorCode::IoError, path.string() + ": " + image.message);
}

std::string frame_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%05zu.png", index);
  return buf;
}

void write_frames(const fs::path& dir, const Clip& clip) {
  fs::create_directories(dir);
  for (std::size_t t = 0; t < clip.frames.size(); ++t) write_png(dir / frame_filename(t), clip.frames[t]);
}

Clip read_frames(const fs::path& dir, const std::string& id) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::DecodeFailure, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  if (files.empty()) throw Error(ErrorCode::DecodeFailure, dir.string() + " holds no PNG frames");
  std::sort(files.begin(), files.end());
  Clip clip{id, {}};
  clip.frames.reserve(files.size());
  for (const auto& f : files) clip.frames.push_back(read_png(f));
  try {
    clip.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::DecodeFailure, e.what());
  }
  return clip;
}

Clip decode_video(const fs::path& path, const std::string& encoder, const fs::path& scratch_dir) {
  const auto exe = locate_encoder(encoder).string();
  const fs::path frames_dir = scratch_dir / "decoded";
  fs::create_directories(frames_dir);
  const std::vector<std::string> argv = {exe, "-hide_banner", "-loglevel", "error", "-nostdin", "-y",
                                         "-i", path.string(), "-vsync", "passthrough", "-pix_fmt", "rgb24",
                                         (frames_dir / "frame_%05d.png").string()};
  const auto log = scratch_dir / "decode_video.stderr";
  const auto res = detail::run_process(argv, {}, false, log);
  if (res.exit_code != 0)
    throw Error(ErrorCode::DecodeFailure, path.string() + ": " + detail::file_tail(log));
  return read_frames(frames_dir, path.stem().string());
}

Clip load_clip(const fs::path& path, const std::string& id, const std::string& encoder) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return read_frames(path, id);
  if (!fs::exists(path, ec)) throw Error(ErrorCode::DecodeFailure, path.string() + " does not exist");
  static std::atomic<unsigned> counter{0};
  const fs::path scratch = fs::temp_directory_path() /
                           ("vidshift-decode-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(scratch, ec);
  fs::create_directories(scratch);
  try {
    Clip clip = decode_video(path, encoder, scratch);
    clip.id = id;
    fs::remove_all(scratch, ec);
    return clip;
  } catch (...) {
    fs::remove_all(scratch, ec);
    throw;
  }
}

}  // namespace vidshift
