#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vidshift/frame.hpp"
#include "vidshift/seed.hpp"

namespace vidshift {

struct GeometryParams {
  int crop_size = 224;
  int resize_size = 256;
};

/// Rotates about the frame centre by `angle_deg` counter-clockwise, bilinear
/// resampling, black fill. Multiples of 90 degrees on square frames (and 180
/// on any frame) are exact pixel permutations.
Frame rotate(const Frame& frame, double angle_deg);

Clip static_rotation(const Clip& clip, double angle_deg);

/// Angle for frame t: uniform in [-bound, bound] from the frame seed.
double random_rotation_angle(const SeedScope& seeds, std::uint32_t t, double bound);
Clip random_rotation(const Clip& clip, double bound_deg, const SeedScope& seeds);

/// Shorter side to resize_size, then the centred resize_size square.
Frame resize_and_square(const Frame& frame, const GeometryParams& geometry = {});

/// Integer (dy, dx) displacement of the crop centre for frame t, each uniform
/// in [-jitter, jitter].
std::pair<int, int> translation_offset(const SeedScope& seeds, std::uint32_t t, int jitter);

/// Per-frame jittered crop_size window from the resized square. Throws
/// FrameTooSmall when crop_size exceeds resize_size and InvalidArgument when
/// jitter exceeds (resize_size - crop_size) / 2.
Clip translation_crop(const Clip& clip, int jitter, const SeedScope& seeds,
                      const GeometryParams& geometry = {});

}  // namespace vidshift
