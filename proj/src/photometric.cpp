#include "vidshift/photometric.hpp"

#include <cmath>

#include "vidshift/error.hpp"
#include "vidshift/kernels.hpp"
#include "vidshift/rng.hpp"

namespace vidshift {

namespace {

constexpr double kInv255 = 1.0 / 255.0;

template <typename F>
Frame map_channels(const Frame& frame, F&& f) {
  Frame out = frame;
  for (std::uint8_t& v : out.bytes()) v = quantize(f(v * kInv255));
  return out;
}

}  // namespace

Frame gaussian_noise(const Frame& frame, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gaussian sigma must be >= 0");
  Rng rng(seed);
  return map_channels(frame, [&](double x) { return x + sigma * rng.normal(); });
}

Frame shot_noise(const Frame& frame, double lambda, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "shot lambda must be > 0");
  Rng rng(seed);
  return map_channels(frame, [&](double x) { return double(rng.poisson(x * lambda)) / lambda; });
}

Frame impulse_noise(const Frame& frame, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "impulse p must be in [0,1]");
  Rng rng(seed);
  Frame out = frame;
  auto px = out.bytes();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    if (rng.uniform() >= p) continue;
    const std::uint8_t v = rng.uniform() < 0.5 ? 0 : 255;
    px[i] = px[i + 1] = px[i + 2] = v;
  }
  return out;
}

Frame speckle_noise(const Frame& frame, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "speckle sigma must be >= 0");
  Rng rng(seed);
  return map_channels(frame, [&](double x) { return x * (1.0 + sigma * rng.normal()); });
}

Frame defocus_blur(const Frame& frame, int radius) {
  return from_planes(convolve(to_planes<double>(frame), disk_kernel<double>(radius)));
}

Frame motion_blur(const Frame& frame, int radius, double sigma, double angle_deg) {
  return from_planes(convolve(to_planes<double>(frame), motion_kernel<double>(radius, sigma, angle_deg)));
}

double motion_blur_angle(std::uint64_t clip_seed) {
  Rng rng(clip_seed);
  return rng.uniform() * 180.0;
}

int zoom_copies(double max_zoom, double step) {
  if (!(max_zoom > 1.0)) throw Error(ErrorCode::InvalidArgument, "max_zoom must be > 1");
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "zoom step must be > 0");
  const int k = static_cast<int>(std::floor((max_zoom - 1.0) / step + 1e-9));
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "zoom step larger than max_zoom - 1");
  return k;
}

Planes<double> center_zoom(const Planes<double>& planes, double factor) {
  const auto h = planes[0].rows();
  const auto w = planes[0].cols();
  const double cy = (h - 1) / 2.0;
  const double cx = (w - 1) / 2.0;
  Planes<double> out;
  for (int c = 0; c < 3; ++c) {
    out[c].resize(h, w);
    for (Eigen::Index y = 0; y < h; ++y)
      for (Eigen::Index x = 0; x < w; ++x)
        out[c](y, x) = sample_bilinear(planes[c], cy + (y - cy) / factor, cx + (x - cx) / factor);
  }
  return out;
}

Frame zoom_blur(const Frame& frame, double max_zoom, double step) {
  const int copies = zoom_copies(max_zoom, step);
  const Planes<double> src = to_planes<double>(frame);
  Planes<double> acc = src;
  for (int i = 1; i <= copies; ++i) {
    const Planes<double> zoomed = center_zoom(src, 1.0 + i * step);
    for (int c = 0; c < 3; ++c) acc[c] += zoomed[c];
  }
  for (auto& p : acc) p /= double(copies + 1);
  return from_planes(acc);
}

}  // namespace vidshift
