#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vidshift {

/// 8-bit interleaved RGB image, row-major.
class Frame {
 public:
  Frame() = default;
  Frame(int height, int width, std::uint8_t fill = 0);
  Frame(int height, int width, std::vector<std::uint8_t> pixels);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t& at(int y, int x, int c) {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }
  std::uint8_t at(int y, int x, int c) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }

  std::span<std::uint8_t> bytes() noexcept { return pixels_; }
  std::span<const std::uint8_t> bytes() const noexcept { return pixels_; }

  bool same_shape(const Frame& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// An identified, ordered sequence of equally sized frames.
struct Clip {
  std::string id;
  std::vector<Frame> frames;

  std::size_t frame_count() const noexcept { return frames.size(); }
  int height() const noexcept { return frames.empty() ? 0 : frames.front().height(); }
  int width() const noexcept { return frames.empty() ? 0 : frames.front().width(); }

  /// Throws InvalidArgument unless T >= 1 and all frames share one shape.
  void validate() const;

  friend bool operator==(const Clip&, const Clip&) = default;
};

/// One colour channel as a dense row-major array.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Planes = std::array<Plane<Scalar>, 3>;

/// 8-bit to [0,1] intensities.
template <typename Scalar>
Planes<Scalar> to_planes(const Frame& frame) {
  Planes<Scalar> out;
  for (auto& p : out) p.resize(frame.height(), frame.width());
  for (int y = 0; y < frame.height(); ++y)
    for (int x = 0; x < frame.width(); ++x)
      for (int c = 0; c < 3; ++c) out[c](y, x) = Scalar(frame.at(y, x, c)) / Scalar(255);
  return out;
}

/// Clamp to [0,1], scale to 255, round half away from zero.
template <typename Scalar>
std::uint8_t quantize(Scalar v) {
  if (!(v > Scalar(0))) return 0;  // also maps NaN to 0
  if (v >= Scalar(1)) return 255;
  return static_cast<std::uint8_t>(std::round(static_cast<double>(v) * 255.0));
}

template <typename Scalar>
Frame from_planes(const Planes<Scalar>& planes) {
  const int h = static_cast<int>(planes[0].rows());
  const int w = static_cast<int>(planes[0].cols());
  Frame out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = quantize(planes[c](y, x));
  return out;
}

/// FNV-1a 64 over each frame's dimensions (LE u32) and pixel bytes.
std::uint64_t pixel_checksum(const Clip& clip);
std::uint64_t pixel_checksum(std::span<const Frame> frames);

/// Bilinear resize with half-pixel centres and edge clamping.
Frame resize_bilinear(const Frame& frame, int height, int width);

/// Scales the shorter side to `target`, keeping aspect ratio. Returns the
/// input unchanged when the shorter side already equals `target`.
Frame resize_shorter_side(const Frame& frame, int target);

/// Copies the window [top, top+height) x [left, left+width).
Frame crop(const Frame& frame, int top, int left, int height, int width);

double psnr(const Frame& a, const Frame& b);

}  // namespace vidshift
