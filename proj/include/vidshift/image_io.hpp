#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vidshift/frame.hpp"

namespace vidshift {

/// 8-bit RGB PNG via libpng. Throws DecodeFailure / IoError.
Frame read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Frame& frame);

/// frame_00000.png, frame_00001.png, ...
std::string frame_filename(std::size_t index);

/// Writes every frame as frame_%05d.png, creating the directory.
void write_frames(const std::filesystem::path& dir, const Clip& clip);

/// Reads every *.png in lexicographic order. Throws DecodeFailure when the
/// directory holds none.
Clip read_frames(const std::filesystem::path& dir, const std::string& id);

/// A directory of PNG frames, or a video file decoded through `encoder`.
Clip load_clip(const std::filesystem::path& path, const std::string& id,
               const std::string& encoder);

}  // namespace vidshift
