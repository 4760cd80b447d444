#include <doctest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"
#include "vidshift/kernels.hpp"
#include "vidshift/photometric.hpp"

using namespace vidshift;
using vidshift::testing::error_code_of;
using vidshift::testing::natural_frame;

namespace {

constexpr int kSide = 224;
constexpr double kN = kSide * kSide * 3.0;

struct Stats {
  double mean = 0, stddev = 0;
};

Stats stats(const Frame& f) {
  double sum = 0, sq = 0;
  for (std::uint8_t v : f.bytes()) {
    const double x = v / 255.0;
    sum += x;
    sq += x * x;
  }
  const double n = static_cast<double>(f.bytes().size());
  const double m = sum / n;
  return {m, std::sqrt(sq / n - m * m)};
}

double mean_abs_diff(const Frame& a, const Frame& b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.bytes().size(); ++i) acc += std::abs(int(a.bytes()[i]) - int(b.bytes()[i]));
  return acc / a.bytes().size();
}

int max_abs_diff(const Frame& a, const Frame& b) {
  int m = 0;
  for (std::size_t i = 0; i < a.bytes().size(); ++i) m = std::max(m, std::abs(int(a.bytes()[i]) - int(b.bytes()[i])));
  return m;
}

// Naive correlation over plain nested loops with edge clamping.
Frame brute_convolve(const Frame& f, const std::vector<std::vector<double>>& k) {
  const int r = static_cast<int>(k.size() / 2);
  Frame out(f.height(), f.width());
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0;
        for (int i = -r; i <= r; ++i)
          for (int j = -r; j <= r; ++j) {
            const int yy = std::min(std::max(y + i, 0), f.height() - 1);
            const int xx = std::min(std::max(x + j, 0), f.width() - 1);
            acc += k[i + r][j + r] * f.at(yy, xx, c) / 255.0;
          }
        out.at(y, x, c) = quantize(acc);
      }
  return out;
}

std::vector<std::vector<double>> brute_disk(int r) {
  std::vector<std::vector<double>> k(2 * r + 1, std::vector<double>(2 * r + 1, 0.0));
  int n = 0;
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      if (i * i + j * j <= r * r) ++n;
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      if (i * i + j * j <= r * r) k[i + r][j + r] = 1.0 / n;
  return k;
}

template <typename K>
std::vector<std::vector<double>> to_rows(const K& k) {
  std::vector<std::vector<double>> out(k.rows(), std::vector<double>(k.cols()));
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) out[i][j] = k(i, j);
  return out;
}

}  // namespace

TEST_SUITE("noise") {
  const Frame kGray(kSide, kSide, 128);  // 0.502
  const Frame kBlack(kSide, kSide, 0);
  const Frame kNatural = natural_frame(64, 80);

  TEST_CASE("zero strength is the identity") {
    CHECK(gaussian_noise(kNatural, 0.0, 1) == kNatural);
    CHECK(speckle_noise(kNatural, 0.0, 1) == kNatural);
    CHECK(impulse_noise(kNatural, 0.0, 1) == kNatural);
  }

  TEST_CASE("same seed, same bytes; other seed, other bytes") {
    CHECK(gaussian_noise(kNatural, 0.1, 5) == gaussian_noise(kNatural, 0.1, 5));
    CHECK(shot_noise(kNatural, 12, 5) == shot_noise(kNatural, 12, 5));
    CHECK(impulse_noise(kNatural, 0.1, 5) == impulse_noise(kNatural, 0.1, 5));
    CHECK(speckle_noise(kNatural, 0.3, 5) == speckle_noise(kNatural, 0.3, 5));
    CHECK(gaussian_noise(kNatural, 0.1, 5) != gaussian_noise(kNatural, 0.1, 6));
  }

  TEST_CASE("gaussian mean and spread at mid-gray") {
    const double x = 128 / 255.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Stats s = stats(gaussian_noise(kGray, 0.12, seed));
      CHECK(std::abs(s.mean - x) <= 4 * 0.12 / std::sqrt(kN) + 0.5 / 255 / std::sqrt(3.0));
      CHECK(std::abs(s.stddev - 0.12) <= 0.012);
    }
  }

  TEST_CASE("speckle spread is proportional to intensity") {
    const double x = 128 / 255.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Stats s = stats(speckle_noise(kGray, 0.2, seed));
      CHECK(std::abs(s.stddev - 0.2 * x) <= 0.1 * 0.2 * x);
    }
    CHECK(speckle_noise(kBlack, 0.6, 3) == kBlack);
  }

  TEST_CASE("shot noise is unbiased") {
    const double x = 128 / 255.0;
    const double lambda = 25;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Stats s = stats(shot_noise(kGray, lambda, seed));
      CHECK(std::abs(s.mean - x) <= 4 * std::sqrt(x / lambda) / std::sqrt(kN));
      CHECK(std::abs(s.mean - x) <= 0.02 * x);
      CHECK(std::abs(s.stddev - std::sqrt(x / lambda)) <= 0.1 * std::sqrt(x / lambda));
    }
    CHECK(shot_noise(kBlack, 3, 1) == kBlack);
  }

  TEST_CASE("shot noise vanishes at very large lambda") {
    const Frame out = shot_noise(kNatural, 1e6, 4);
    std::size_t close = 0;
    for (std::size_t i = 0; i < out.bytes().size(); ++i)
      close += std::abs(int(out.bytes()[i]) - int(kNatural.bytes()[i])) <= 1;
    CHECK(double(close) / out.bytes().size() > 0.999);
  }

  TEST_CASE("impulse changed fraction follows the binomial") {
    const double pixels = kSide * kSide;
    for (double p : {0.02, 0.1, 0.17})
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Frame out = impulse_noise(kGray, p, seed);
        std::size_t changed = 0;
        for (int y = 0; y < kSide; ++y)
          for (int x = 0; x < kSide; ++x) {
            const std::uint8_t v = out.at(y, x, 0);
            if (v != 128) {
              ++changed;
              REQUIRE((v == 0 || v == 255));
              REQUIRE(out.at(y, x, 1) == v);
              REQUIRE(out.at(y, x, 2) == v);
            }
          }
        CHECK(std::abs(changed / pixels - p) <= 4 * std::sqrt(p * (1 - p) / pixels));
      }
  }

  TEST_CASE("impulse p=1 replaces every pixel with black or white") {
    const Frame out = impulse_noise(kNatural, 1.0, 9);
    std::size_t white = 0;
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x) {
        const auto v = out.at(y, x, 0);
        REQUIRE((v == 0 || v == 255));
        CHECK(out.at(y, x, 1) == v);
        CHECK(out.at(y, x, 2) == v);
        white += v == 255;
      }
    const double n = out.height() * out.width();
    CHECK(std::abs(white / n - 0.5) <= 4 * std::sqrt(0.25 / n));
  }

  TEST_CASE("damage grows with severity") {
    const Frame f = natural_frame(96, 128);
    const double gauss[] = {0.04, 0.08, 0.12, 0.18, 0.26};
    const double speck[] = {0.10, 0.20, 0.35, 0.45, 0.60};
    const double imp[] = {0.02, 0.04, 0.07, 0.10, 0.17};
    double pg = 0, ps = 0, pi = 0;
    for (int s = 0; s < 5; ++s) {
      const double g = mean_abs_diff(f, gaussian_noise(f, gauss[s], 1));
      const double sp = mean_abs_diff(f, speckle_noise(f, speck[s], 1));
      const double im = mean_abs_diff(f, impulse_noise(f, imp[s], 1));
      CHECK(g >= pg);
      CHECK(sp >= ps);
      CHECK(im >= pi);
      pg = g, ps = sp, pi = im;
    }
  }

  TEST_CASE("parameter preconditions") {
    CHECK(error_code_of([&] { gaussian_noise(kNatural, -0.1, 1); }) == ErrorCode::InvalidArgument);
    CHECK(error_code_of([&] { shot_noise(kNatural, 0, 1); }) == ErrorCode::InvalidArgument);
    CHECK(error_code_of([&] { impulse_noise(kNatural, 1.5, 1); }) == ErrorCode::InvalidArgument);
    CHECK(error_code_of([&] { speckle_noise(kNatural, -1, 1); }) == ErrorCode::InvalidArgument);
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("disk kernel taps match the lattice-point count") {
    // Lattice points with x^2 + y^2 <= r^2 (Gauss circle problem).
    const std::pair<int, int> counts[] = {{1, 5}, {2, 13}, {3, 29}, {4, 49}, {5, 81}, {6, 113}, {8, 197}};
    for (auto [r, n] : counts) {
      const auto k = disk_kernel<double>(r);
      int taps = 0;
      for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < k.cols(); ++j)
          if (k(i, j) != 0) {
            ++taps;
            CHECK(k(i, j) == doctest::Approx(1.0 / n).epsilon(1e-12));
          }
      CHECK(taps == n);
      CHECK(std::abs(k.sum() - 1.0) < 1e-9);
    }
    CHECK(error_code_of([] { disk_kernel<double>(0); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("motion kernels are normalized, non-negative and point-symmetric") {
    for (int r : {1, 5, 7, 9, 12, 15})
      for (double angle = 0; angle < 180; angle += 7.5) {
        const auto k = motion_kernel<double>(r, r / 3.0, angle);
        CAPTURE(r);
        CAPTURE(angle);
        CHECK(std::abs(k.sum() - 1.0) < 1e-9);
        CHECK(k.minCoeff() >= 0.0);
        const int n = static_cast<int>(k.rows());
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) REQUIRE(std::abs(k(i, j) - k(n - 1 - i, n - 1 - j)) < 1e-12);
      }
  }

  TEST_CASE("axis-aligned motion kernels stay on one line") {
    const int r = 9;
    const auto h = motion_kernel<double>(r, 3, 0);
    const auto v = motion_kernel<double>(r, 3, 90);
    for (int i = 0; i < h.rows(); ++i)
      for (int j = 0; j < h.cols(); ++j) {
        if (i != r) CHECK(h(i, j) == 0.0);
        if (j != r) CHECK(v(i, j) == 0.0);
      }
    // Gaussian profile along the line.
    for (int t = 1; t <= r; ++t)
      CHECK(h(r, r + t) / h(r, r) == doctest::Approx(std::exp(-0.5 * t * t / 9.0)).epsilon(1e-12));
  }

  TEST_CASE("a 45 degree kernel runs up and to the right") {
    const auto k = motion_kernel<double>(3, 1.5, 45);
    CHECK(k(0, 6) > 0);  // (x=+3, y=-3) in image coordinates
    CHECK(k(6, 0) > 0);
    CHECK(k(0, 0) == 0);
    CHECK(k(6, 6) == 0);
  }
}

TEST_SUITE("blur") {
  const Frame kNatural = natural_frame(40, 52);

  TEST_CASE("constant frames are fixed points of all blurs") {
    for (std::uint8_t v : {0, 1, 77, 128, 254, 255}) {
      const Frame f(30, 30, v);
      for (int r : {2, 3, 4, 6, 8}) CHECK(defocus_blur(f, r) == f);
      for (int r : {5, 7, 9, 12, 15})
        for (double a : {0.0, 33.3, 90.0, 151.0}) CHECK(motion_blur(f, r, r / 3.0, a) == f);
      for (double z : {1.01, 1.06, 1.11, 1.16, 1.21, 1.26}) CHECK(zoom_blur(f, z) == f);
    }
  }

  TEST_CASE("defocus matches brute-force convolution") {
    for (int r : {2, 4}) {
      const Frame fast = defocus_blur(kNatural, r);
      const Frame slow = brute_convolve(kNatural, brute_disk(r));
      CHECK(max_abs_diff(fast, slow) <= 1);
      CHECK(mean_abs_diff(fast, slow) < 0.01);
    }
  }

  TEST_CASE("motion blur matches brute-force convolution") {
    const auto k = motion_kernel<double>(7, 7 / 3.0, 33);
    const Frame fast = motion_blur(kNatural, 7, 7 / 3.0, 33);
    const Frame slow = brute_convolve(kNatural, to_rows(k));
    CHECK(max_abs_diff(fast, slow) <= 1);
  }

  TEST_CASE("impulse response of defocus is the disk") {
    const int r = 4;
    Frame f(21, 21, 0);
    for (int c = 0; c < 3; ++c) f.at(10, 10, c) = 255;
    // Pre-quantization: exactly the kernel, summing to 1.
    const auto planes = convolve(to_planes<double>(f), disk_kernel<double>(r));
    CHECK(planes[0].sum() == doctest::Approx(1.0).epsilon(1e-12));
    const auto disk = brute_disk(r);
    const Frame out = defocus_blur(f, r);
    for (int y = 0; y < 21; ++y)
      for (int x = 0; x < 21; ++x) {
        const int dy = y - 10, dx = x - 10;
        const double expect = (std::abs(dy) <= r && std::abs(dx) <= r) ? disk[dy + r][dx + r] : 0.0;
        CHECK(planes[1](y, x) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(out.at(y, x, 2) - expect * 255) <= 1.0);
      }
  }

  TEST_CASE("defocus preserves the mean of a padded frame") {
    Frame f(64, 64, 90);
    const Frame inner = natural_frame(40, 40);
    for (int y = 0; y < 40; ++y)
      for (int x = 0; x < 40; ++x)
        for (int c = 0; c < 3; ++c) f.at(y + 12, x + 12, c) = inner.at(y, x, c);
    for (int r : {2, 3, 4, 6, 8}) CHECK(std::abs(stats(defocus_blur(f, r)).mean - stats(f).mean) <= 1.0 / 255);
  }

  TEST_CASE("horizontal motion blur never mixes rows") {
    Frame f(20, 30, 0);
    for (int x = 0; x < 30; ++x)
      for (int c = 0; c < 3; ++c) f.at(7, x, c) = 255;
    const Frame out = motion_blur(f, 9, 3, 0);
    CHECK(out == f);  // a full-width line is invariant under horizontal smear
    Frame dot(20, 30, 0);
    for (int c = 0; c < 3; ++c) dot.at(7, 15, c) = 255;
    const Frame smear = motion_blur(dot, 9, 3, 0);
    for (int y = 0; y < 20; ++y)
      for (int x = 0; x < 30; ++x)
        if (y != 7) REQUIRE(smear.at(y, x, 0) == 0);
  }

  TEST_CASE("motion angle comes from the clip seed") {
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const double a = motion_blur_angle(s);
      REQUIRE(a >= 0.0);
      REQUIRE(a < 180.0);
    }
    CHECK(motion_blur_angle(17) == motion_blur_angle(17));
    CHECK(motion_blur_angle(17) != motion_blur_angle(18));
  }

  TEST_CASE("zoom copy count") {
    CHECK(zoom_copies(1.01, 0.01) == 1);
    CHECK(zoom_copies(1.06, 0.01) == 6);
    CHECK(zoom_copies(1.11, 0.01) == 11);
    CHECK(zoom_copies(1.26, 0.01) == 26);
    CHECK(zoom_copies(1.26, 0.05) == 5);
    CHECK(error_code_of([] { zoom_copies(1.0, 0.01); }) == ErrorCode::InvalidArgument);
    CHECK(error_code_of([] { zoom_copies(1.005, 0.01); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("zoom blur is the mean of K+1 explicitly zoomed copies") {
    // Independent centre zoom: output (y, x) reads the source at
    // c + (p - c) / z with clamped bilinear interpolation.
    const Frame f = natural_frame(31, 41);
    const double max_zoom = 1.06, step = 0.01;
    const int h = f.height(), w = f.width();
    const double cy = (h - 1) / 2.0, cx = (w - 1) / 2.0;
    auto src = [&](int y, int x, int c) {
      return f.at(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1), c) / 255.0;
    };
    Frame expect(h, w);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int c = 0; c < 3; ++c) {
          double acc = src(y, x, c);
          for (int i = 1; i <= 6; ++i) {
            const double z = 1.0 + i * step;
            const double sy = cy + (y - cy) / z, sx = cx + (x - cx) / z;
            const int y0 = static_cast<int>(std::floor(sy)), x0 = static_cast<int>(std::floor(sx));
            const double fy = sy - y0, fx = sx - x0;
            acc += (1 - fy) * ((1 - fx) * src(y0, x0, c) + fx * src(y0, x0 + 1, c)) +
                   fy * ((1 - fx) * src(y0 + 1, x0, c) + fx * src(y0 + 1, x0 + 1, c));
          }
          expect.at(y, x, c) = quantize(acc / 7.0);
        }
    CHECK(max_abs_diff(zoom_blur(f, max_zoom, step), expect) <= 1);
  }

  TEST_CASE("centre of a centred white square stays white") {
    Frame f(33, 33, 0);
    for (int y = 11; y < 22; ++y)
      for (int x = 11; x < 22; ++x)
        for (int c = 0; c < 3; ++c) f.at(y, x, c) = 255;
    for (double z : {1.06, 1.26}) {
      const Frame out = zoom_blur(f, z);
      CHECK(out.at(16, 16, 0) == 255);
      CHECK(out.at(16, 16, 2) == 255);
    }
  }

  TEST_CASE("blur preconditions") {
    CHECK(error_code_of([&] { defocus_blur(kNatural, 0); }) == ErrorCode::InvalidArgument);
    CHECK(error_code_of([&] { motion_blur(kNatural, 3, 0.0, 10); }) == ErrorCode::InvalidArgument);
  }
}
