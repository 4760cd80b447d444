#pragma once

#include <cstdint>

#include "vidshift/frame.hpp"

namespace vidshift {

// Noise. Intensities are handled in [0,1]; outputs are clamped and rounded.

/// x + N(0, sigma) per pixel-channel.
Frame gaussian_noise(const Frame& frame, double sigma, std::uint64_t seed);

/// Poisson(x * lambda) / lambda per pixel-channel.
Frame shot_noise(const Frame& frame, double lambda, std::uint64_t seed);

/// Each pixel independently becomes pure black or pure white (equal odds,
/// all channels together) with probability p.
Frame impulse_noise(const Frame& frame, double p, std::uint64_t seed);

/// x * (1 + N(0, sigma)) per pixel-channel.
Frame speckle_noise(const Frame& frame, double sigma, std::uint64_t seed);

// Blur. Borders are edge-replicated.

Frame defocus_blur(const Frame& frame, int radius);

/// `angle_deg` is measured counter-clockwise from horizontal. Clip-level
/// callers draw it once per clip, see `motion_blur_angle`.
Frame motion_blur(const Frame& frame, int radius, double sigma, double angle_deg);

/// Uniform in [0, 180) from the clip seed.
double motion_blur_angle(std::uint64_t clip_seed);

/// Number of zoomed copies averaged with the original: floor((max_zoom-1)/step).
int zoom_copies(double max_zoom, double step);

/// Mean of the frame and its centre zooms at 1+step, 1+2*step, ... <= max_zoom.
Frame zoom_blur(const Frame& frame, double max_zoom, double step = 0.01);

/// One centre zoom by `factor` (crop to 1/factor then bilinear resize back),
/// unquantized.
Planes<double> center_zoom(const Planes<double>& planes, double factor);

}  // namespace vidshift
