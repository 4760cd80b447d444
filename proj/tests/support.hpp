#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "vidshift/codec.hpp"
#include "vidshift/error.hpp"
#include "vidshift/frame.hpp"

namespace vidshift::testing {

/// Smooth shading, a few hard-edged shapes and fine texture that drift with t,
/// so codecs and blurs see something closer to camera footage than noise.
inline Frame natural_frame(int height, int width, int t = 0, std::uint32_t seed = 1) {
  Frame f(height, width);
  const double ph = 0.37 * seed;
  const double cx = width * (0.35 + 0.01 * t);
  const double cy = height * 0.55;
  const double r = std::min(height, width) * 0.18;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = double(x) / width;
      const double v = double(y) / height;
      double base[3] = {0.25 + 0.5 * u, 0.3 + 0.4 * v, 0.55 - 0.3 * u * v};
      const double tex = 0.06 * std::sin(0.9 * (x + 2 * t) + ph) * std::cos(0.7 * y - ph);
      for (double& b : base) b += tex + 0.08 * std::sin(6.0 * u + 4.0 * v + 0.2 * t + ph);
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) < r * r) {
        base[0] = 0.85;
        base[1] = 0.2 + 0.1 * v;
        base[2] = 0.15;
      }
      const int bx = width * 2 / 3 - t, by = height / 5;
      if (x >= bx && x < bx + width / 6 && y >= by && y < by + height / 4) {
        const bool stripe = ((x - bx) / 3) % 2 == 0;
        base[0] = base[1] = base[2] = stripe ? 0.9 : 0.1;
      }
      for (int c = 0; c < 3; ++c) f.at(y, x, c) = quantize(base[c]);
    }
  }
  return f;
}

inline Clip natural_clip(const std::string& id, int frames, int height, int width,
                         std::uint32_t seed = 1) {
  Clip clip{id, {}};
  for (int t = 0; t < frames; ++t) clip.frames.push_back(natural_frame(height, width, t, seed));
  return clip;
}

inline Frame constant_frame(int height, int width, std::uint8_t value) {
  return Frame(height, width, value);
}

/// Removes itself on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "vidshift-test") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& sub) const { return path_ / sub; }

 private:
  std::filesystem::path path_;
};

inline bool encoder_available() {
  try {
    locate_encoder(default_encoder());
    return true;
  } catch (const Error&) {
    return false;
  }
}

template <typename F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a vidshift::Error");
}

}  // namespace vidshift::testing
