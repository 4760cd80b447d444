#include "vidshift/camera.hpp"

#include <cmath>
#include <numbers>

#include "vidshift/error.hpp"
#include "vidshift/rng.hpp"

namespace vidshift {

namespace {

Frame rotate_right_angle(const Frame& f, int quarter_turns) {
  const int h = f.height();
  const int w = f.width();
  if (quarter_turns == 2) {
    Frame out(h, w);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int c = 0; c < 3; ++c) out.at(y, x, c) = f.at(h - 1 - y, w - 1 - x, c);
    return out;
  }
  // Square frames only.
  Frame out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c)
        out.at(y, x, c) = quarter_turns == 1 ? f.at(x, w - 1 - y, c) : f.at(h - 1 - x, y, c);
  return out;
}

}  // namespace

Frame rotate(const Frame& frame, double angle_deg) {
  if (!std::isfinite(angle_deg)) throw Error(ErrorCode::InvalidArgument, "rotation angle must be finite");
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0) a += 360.0;
  if (a == 0.0) return frame;
  if (a == 180.0) return rotate_right_angle(frame, 2);
  if ((a == 90.0 || a == 270.0) && frame.height() == frame.width())
    return rotate_right_angle(frame, a == 90.0 ? 1 : 3);

  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const int h = frame.height();
  const int w = frame.width();
  const double cy = (h - 1) / 2.0;
  const double cx = (w - 1) / 2.0;
  Frame out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      const double sx = cx + dx * cs - dy * sn;
      const double sy = cy + dx * sn + dy * cs;
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const double fx = sx - x0;
      const double fy = sy - y0;
      double acc[3] = {0, 0, 0};
      auto tap = [&](int yy, int xx, double wgt) {
        if (wgt == 0.0 || yy < 0 || yy >= h || xx < 0 || xx >= w) return;  // black fill
        for (int c = 0; c < 3; ++c) acc[c] += wgt * frame.at(yy, xx, c);
      };
      tap(y0, x0, (1 - fx) * (1 - fy));
      tap(y0, x0 + 1, fx * (1 - fy));
      tap(y0 + 1, x0, (1 - fx) * fy);
      tap(y0 + 1, x0 + 1, fx * fy);
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = quantize(acc[c] / 255.0);
    }
  }
  return out;
}

Clip static_rotation(const Clip& clip, double angle_deg) {
  Clip out{clip.id, {}};
  out.frames.reserve(clip.frames.size());
  for (const Frame& f : clip.frames) out.frames.push_back(rotate(f, angle_deg));
  return out;
}

double random_rotation_angle(const SeedScope& seeds, std::uint32_t t, double bound) {
  Rng rng(seeds.frame_seed(t));
  return rng.uniform(-bound, bound);
}

Clip random_rotation(const Clip& clip, double bound_deg, const SeedScope& seeds) {
  if (!(bound_deg >= 0.0)) throw Error(ErrorCode::InvalidArgument, "rotation bound must be >= 0");
  Clip out{clip.id, {}};
  out.frames.reserve(clip.frames.size());
  for (std::size_t t = 0; t < clip.frames.size(); ++t) {
    if (bound_deg == 0.0) {
      out.frames.push_back(clip.frames[t]);
      continue;
    }
    out.frames.push_back(rotate(clip.frames[t], random_rotation_angle(seeds, static_cast<std::uint32_t>(t), bound_deg)));
  }
  return out;
}

Frame resize_and_square(const Frame& frame, const GeometryParams& geometry) {
  const Frame resized = resize_shorter_side(frame, geometry.resize_size);
  const int s = geometry.resize_size;
  return crop(resized, (resized.height() - s) / 2, (resized.width() - s) / 2, s, s);
}

std::pair<int, int> translation_offset(const SeedScope& seeds, std::uint32_t t, int jitter) {
  Rng rng(seeds.frame_seed(t));
  const int dy = static_cast<int>(rng.uniform_int(-jitter, jitter));
  const int dx = static_cast<int>(rng.uniform_int(-jitter, jitter));
  return {dy, dx};
}

Clip translation_crop(const Clip& clip, int jitter, const SeedScope& seeds,
                      const GeometryParams& geometry) {
  if (geometry.crop_size < 1 || geometry.crop_size > geometry.resize_size)
    throw Error(ErrorCode::FrameTooSmall, "crop_size " + std::to_string(geometry.crop_size) +
                                              " exceeds resized frame " + std::to_string(geometry.resize_size));
  const int slack = (geometry.resize_size - geometry.crop_size) / 2;
  if (jitter < 0 || jitter > slack)
    throw Error(ErrorCode::InvalidArgument,
                "translation jitter must be in [0, " + std::to_string(slack) + "]");
  Clip out{clip.id, {}};
  out.frames.reserve(clip.frames.size());
  for (std::size_t t = 0; t < clip.frames.size(); ++t) {
    const Frame square = resize_and_square(clip.frames[t], geometry);
    const auto [dy, dx] = jitter == 0 ? std::pair{0, 0}
                                      : translation_offset(seeds, static_cast<std::uint32_t>(t), jitter);
    out.frames.push_back(crop(square, slack + dy, slack + dx, geometry.crop_size, geometry.crop_size));
  }
  return out;
}

}  // namespace vidshift
