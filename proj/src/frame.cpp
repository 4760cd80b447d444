#include "vidshift/frame.hpp"

#include <algorithm>
#include <limits>

#include "vidshift/error.hpp"
#include "vidshift/seed.hpp"

namespace vidshift {

Frame::Frame(int height, int width, std::uint8_t fill)
    : height_(height), width_(width) {
  if (height < 1 || width < 1) throw Error(ErrorCode::InvalidArgument, "frame dimensions must be >= 1");
  pixels_.assign(static_cast<std::size_t>(height) * width * 3, fill);
}

Frame::Frame(int height, int width, std::vector<std::uint8_t> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (height < 1 || width < 1) throw Error(ErrorCode::InvalidArgument, "frame dimensions must be >= 1");
  if (pixels_.size() != static_cast<std::size_t>(height) * width * 3)
    throw Error(ErrorCode::InvalidArgument, "pixel buffer length must be height*width*3");
}

void Clip::validate() const {
  if (frames.empty()) throw Error(ErrorCode::InvalidArgument, "clip '" + id + "' has no frames");
  for (const Frame& f : frames) {
    if (f.empty()) throw Error(ErrorCode::InvalidArgument, "clip '" + id + "' holds an empty frame");
    if (!f.same_shape(frames.front()))
      throw Error(ErrorCode::InvalidArgument, "clip '" + id + "' mixes frame sizes");
  }
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

std::uint64_t pixel_checksum(std::span<const Frame> frames) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<std::uint8_t> dims;
  for (const Frame& f : frames) {
    dims.clear();
    put_u32(dims, static_cast<std::uint32_t>(f.height()));
    put_u32(dims, static_cast<std::uint32_t>(f.width()));
    h = fnv1a64(dims, h);
    h = fnv1a64(f.bytes(), h);
  }
  return h;
}

std::uint64_t pixel_checksum(const Clip& clip) { return pixel_checksum(clip.frames); }

Frame resize_bilinear(const Frame& frame, int height, int width) {
  if (height < 1 || width < 1) throw Error(ErrorCode::InvalidArgument, "resize target must be >= 1");
  if (height == frame.height() && width == frame.width()) return frame;
  Frame out(height, width);
  const double sy = double(frame.height()) / height;
  const double sx = double(frame.width()) / width;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, double(frame.height() - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, frame.height() - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, double(frame.width() - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, frame.width() - 1);
      const double wx = fx - x0;
      for (int c = 0; c < 3; ++c) {
        const double top = frame.at(y0, x0, c) * (1 - wx) + frame.at(y0, x1, c) * wx;
        const double bottom = frame.at(y1, x0, c) * (1 - wx) + frame.at(y1, x1, c) * wx;
        out.at(y, x, c) = quantize((top * (1 - wy) + bottom * wy) / 255.0);
      }
    }
  }
  return out;
}

Frame resize_shorter_side(const Frame& frame, int target) {
  const int shorter = std::min(frame.height(), frame.width());
  if (shorter == target) return frame;
  const double scale = double(target) / shorter;
  const int h = frame.height() == shorter ? target : static_cast<int>(std::lround(frame.height() * scale));
  const int w = frame.width() == shorter ? target : static_cast<int>(std::lround(frame.width() * scale));
  return resize_bilinear(frame, std::max(h, target), std::max(w, target));
}

Frame crop(const Frame& frame, int top, int left, int height, int width) {
  if (top < 0 || left < 0 || height < 1 || width < 1 || top + height > frame.height() ||
      left + width > frame.width())
    throw Error(ErrorCode::InvalidArgument, "crop window outside frame");
  Frame out(height, width);
  for (int y = 0; y < height; ++y) {
    const auto src = frame.bytes().subspan(
        (static_cast<std::size_t>(top + y) * frame.width() + left) * 3, static_cast<std::size_t>(width) * 3);
    std::copy(src.begin(), src.end(), out.bytes().begin() + static_cast<std::ptrdiff_t>(y) * width * 3);
  }
  return out;
}

double psnr(const Frame& a, const Frame& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::InvalidArgument, "psnr needs equal shapes");
  double se = 0.0;
  const auto pa = a.bytes();
  const auto pb = b.bytes();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = double(pa[i]) - double(pb[i]);
    se += d * d;
  }
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = se / double(pa.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace vidshift
