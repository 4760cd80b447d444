#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "vidshift/error.hpp"
#include "vidshift/frame.hpp"

namespace vidshift {

/// Square 2-D kernel; the centre tap sits at (radius, radius).
template <typename Scalar>
using Kernel = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
int kernel_radius(const Kernel<Scalar>& k) {
  return static_cast<int>(k.rows() / 2);
}

/// Uniform disk: every tap with dx^2 + dy^2 <= r^2 gets the same weight.
template <typename Scalar>
Kernel<Scalar> disk_kernel(int radius) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "disk radius must be >= 1");
  const int n = 2 * radius + 1;
  Kernel<Scalar> k = Kernel<Scalar>::Zero(n, n);
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (dx * dx + dy * dy <= radius * radius) k(dy + radius, dx + radius) = Scalar(1);
  return k / k.sum();
}

/// Gaussian-weighted line through the centre, half-length `radius`, at
/// `angle_deg` counter-clockwise from the +x axis (image y grows downwards).
/// Sub-pixel tap positions are splatted bilinearly, so angle 0 touches only
/// the centre row.
template <typename Scalar>
Kernel<Scalar> motion_kernel(int radius, double sigma, double angle_deg) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "motion radius must be >= 1");
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "motion sigma must be > 0");
  const int n = 2 * radius + 1;
  Kernel<Scalar> k = Kernel<Scalar>::Zero(n, n);
  const double theta = angle_deg * std::numbers::pi / 180.0;
  double c = std::cos(theta);
  double s = std::sin(theta);
  // Snap tiny trig residue so the axis-aligned cases stay on the grid.
  if (std::abs(c) < 1e-12) c = 0.0;
  if (std::abs(s) < 1e-12) s = 0.0;
  for (int t = -radius; t <= radius; ++t) {
    const double w = std::exp(-0.5 * (t * t) / (sigma * sigma));
    const double x = t * c + radius;
    const double y = -t * s + radius;
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;
    auto splat = [&](int yy, int xx, double ww) {
      if (ww <= 0.0) return;
      k(std::clamp(yy, 0, n - 1), std::clamp(xx, 0, n - 1)) += Scalar(ww);
    };
    splat(y0, x0, w * (1 - fx) * (1 - fy));
    splat(y0, x0 + 1, w * fx * (1 - fy));
    splat(y0 + 1, x0, w * (1 - fx) * fy);
    splat(y0 + 1, x0 + 1, w * fx * fy);
  }
  return k / k.sum();
}

/// Correlates one plane with `kernel`, replicating edge pixels. Zero taps are
/// skipped, which keeps sparse line kernels cheap.
template <typename Scalar>
Plane<Scalar> convolve(const Plane<Scalar>& src, const Kernel<Scalar>& kernel) {
  struct Tap {
    int dy, dx;
    Scalar w;
  };
  const int r = kernel_radius(kernel);
  std::vector<Tap> taps;
  for (int i = 0; i < kernel.rows(); ++i)
    for (int j = 0; j < kernel.cols(); ++j)
      if (kernel(i, j) != Scalar(0)) taps.push_back({i - r, j - r, kernel(i, j)});

  const int h = static_cast<int>(src.rows());
  const int w = static_cast<int>(src.cols());
  Plane<Scalar> out = Plane<Scalar>::Zero(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Scalar acc(0);
      for (const Tap& t : taps) {
        const int yy = std::clamp(y + t.dy, 0, h - 1);
        const int xx = std::clamp(x + t.dx, 0, w - 1);
        acc += t.w * src(yy, xx);
      }
      out(y, x) = acc;
    }
  }
  return out;
}

template <typename Scalar>
Planes<Scalar> convolve(const Planes<Scalar>& src, const Kernel<Scalar>& kernel) {
  return {convolve(src[0], kernel), convolve(src[1], kernel), convolve(src[2], kernel)};
}

/// Bilinear sample at continuous pixel coordinates (pixel centres on
/// integers), clamping to the border.
template <typename Scalar>
Scalar sample_bilinear(const Plane<Scalar>& p, double y, double x) {
  const int h = static_cast<int>(p.rows());
  const int w = static_cast<int>(p.cols());
  y = std::clamp(y, 0.0, double(h - 1));
  x = std::clamp(x, 0.0, double(w - 1));
  const int y0 = static_cast<int>(std::floor(y));
  const int x0 = static_cast<int>(std::floor(x));
  const int y1 = std::min(y0 + 1, h - 1);
  const int x1 = std::min(x0 + 1, w - 1);
  const Scalar fy = Scalar(y - y0);
  const Scalar fx = Scalar(x - x0);
  const Scalar top = p(y0, x0) * (Scalar(1) - fx) + p(y0, x1) * fx;
  const Scalar bottom = p(y1, x0) * (Scalar(1) - fx) + p(y1, x1) * fx;
  return top * (Scalar(1) - fy) + bottom * fy;
}

}  // namespace vidshift
