#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "vidshift/camera.hpp"

using namespace vidshift;
using vidshift::testing::error_code_of;
using vidshift::testing::natural_clip;
using vidshift::testing::natural_frame;

namespace {

Frame smooth_frame(int h, int w) {
  Frame f(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      f.at(y, x, 0) = quantize(0.5 + 0.3 * std::sin(x * 0.05) * std::cos(y * 0.04));
      f.at(y, x, 1) = quantize(0.2 + 0.6 * double(x + y) / (h + w));
      f.at(y, x, 2) = quantize(0.7 - 0.4 * double(y) / h);
    }
  return f;
}

bool window_equals(const Frame& big, const Frame& small, int top, int left) {
  for (int y = 0; y < small.height(); ++y)
    for (int x = 0; x < small.width(); ++x)
      for (int c = 0; c < 3; ++c)
        if (big.at(y + top, x + left, c) != small.at(y, x, c)) return false;
  return true;
}

}  // namespace

TEST_SUITE("rotation") {
  TEST_CASE("zero degrees is the identity") {
    const Frame f = natural_frame(30, 41);
    CHECK(rotate(f, 0) == f);
    CHECK(rotate(f, 360) == f);
  }

  TEST_CASE("90 degrees on a square frame is the expected permutation") {
    const Frame f = natural_frame(17, 17);
    const Frame r = rotate(f, 90);
    const int n = 17;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        for (int c = 0; c < 3; ++c) REQUIRE(r.at(y, x, c) == f.at(x, n - 1 - y, c));
  }

  TEST_CASE("rotation is counter-clockwise") {
    Frame f(21, 21, 0);
    for (int c = 0; c < 3; ++c) f.at(10, 18, c) = 255;  // right of centre
    const Frame r = rotate(f, 90);
    CHECK(r.at(2, 10, 0) == 255);  // now above centre
  }

  TEST_CASE("four quarter turns compose to the identity") {
    for (int n : {8, 17, 64}) {
      const Frame f = natural_frame(n, n);
      Frame r = f;
      for (int i = 0; i < 4; ++i) r = rotate(r, 90);
      CHECK(r == f);
      CHECK(rotate(rotate(f, 90), 270) == f);
      CHECK(rotate(f, -90) == rotate(f, 270));
    }
  }

  TEST_CASE("180 degrees is exact on any frame") {
    const Frame f = natural_frame(13, 22);
    const Frame r = rotate(f, 180);
    for (int y = 0; y < 13; ++y)
      for (int x = 0; x < 22; ++x) CHECK(r.at(y, x, 1) == f.at(12 - y, 21 - x, 1));
    CHECK(rotate(r, 180) == f);
  }

  TEST_CASE("30 then -30 restores the interior") {
    const int n = 96;
    const Frame f = smooth_frame(n, n);
    const Frame back = rotate(rotate(f, 30), -30);
    int worst = 0;
    const double c = (n - 1) / 2.0;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        // Stay inside the circle that never leaves the frame.
        if ((y - c) * (y - c) + (x - c) * (x - c) > (c - 3) * (c - 3)) continue;
        for (int ch = 0; ch < 3; ++ch) worst = std::max(worst, std::abs(back.at(y, x, ch) - f.at(y, x, ch)));
      }
    CHECK(worst <= 2);
  }

  TEST_CASE("corners outside the rotated frame are black") {
    const Frame f(40, 40, 200);
    const Frame r = rotate(f, 45);
    CHECK(r.at(0, 0, 0) == 0);
    CHECK(r.at(39, 39, 2) == 0);
    CHECK(r.at(20, 20, 1) == 200);
  }

  TEST_CASE("static rotation uses one angle for every frame") {
    const Clip clip = natural_clip("c", 4, 24, 24);
    const Clip out = static_rotation(clip, 20);
    REQUIRE(out.frame_count() == 4);
    for (std::size_t t = 0; t < 4; ++t) CHECK(out.frames[t] == rotate(clip.frames[t], 20));
    CHECK(error_code_of([] { rotate(Frame(4, 4), NAN); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("random rotation angles are seeded and bounded") {
    const SeedScope scope{{3}, "v", Kind::RandomRotation, 4};
    double sum = 0, lo = 1e9, hi = -1e9;
    for (std::uint32_t t = 0; t < 1000; ++t) {
      const double a = random_rotation_angle(scope, t, 30);
      CHECK(a == random_rotation_angle(scope, t, 30));
      sum += a;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    CHECK(std::abs(sum / 1000) <= 3.0);
    CHECK(lo >= -30);
    CHECK(hi <= 30);
    CHECK(lo < -25);
    CHECK(hi > 25);
  }

  TEST_CASE("random rotation applies the per-frame angle") {
    const Clip clip = natural_clip("c", 3, 20, 20);
    const SeedScope scope{{1}, "c", Kind::RandomRotation, 2};
    const Clip out = random_rotation(clip, 20, scope);
    for (std::uint32_t t = 0; t < 3; ++t)
      CHECK(out.frames[t] == rotate(clip.frames[t], random_rotation_angle(scope, t, 20)));
    CHECK(random_rotation(clip, 0, scope) == clip);
    CHECK(error_code_of([&] { random_rotation(clip, -1, scope); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("angles depend on the frame index, not the content") {
    const SeedScope scope{{1}, "c", Kind::RandomRotation, 2};
    const Clip a = natural_clip("c", 3, 20, 20, 1);
    const Clip b = natural_clip("c", 3, 20, 20, 2);
    Clip mixed = b;
    mixed.frames[1] = a.frames[1];
    CHECK(random_rotation(mixed, 30, scope).frames[1] == random_rotation(a, 30, scope).frames[1]);
  }
}

TEST_SUITE("translation") {
  TEST_CASE("resize_and_square") {
    const Frame f = natural_frame(240, 320);
    const Frame sq = resize_and_square(f);
    CHECK(sq.height() == 256);
    CHECK(sq.width() == 256);
    const Frame resized = resize_shorter_side(f, 256);
    CHECK(resized.width() == 341);
    CHECK(sq == crop(resized, 0, (341 - 256) / 2, 256, 256));
  }

  TEST_CASE("offsets are integer, bounded and seeded") {
    const SeedScope scope{{2}, "v", Kind::Translation, 5};
    std::set<int> seen;
    for (std::uint32_t t = 0; t < 2000; ++t) {
      const auto [dy, dx] = translation_offset(scope, t, 16);
      REQUIRE(std::abs(dy) <= 16);
      REQUIRE(std::abs(dx) <= 16);
      seen.insert(dy);
      CHECK(translation_offset(scope, t, 16) == std::make_pair(dy, dx));
    }
    CHECK(seen.size() == 33);
    CHECK(translation_offset(scope, 0, 0) == std::make_pair(0, 0));
  }

  TEST_CASE("jitter 0 is a plain centre crop") {
    const Clip clip = natural_clip("c", 3, 256, 256);
    const Clip out = translation_crop(clip, 0, {{1}, "c", Kind::Translation, 1});
    for (std::size_t t = 0; t < 3; ++t) CHECK(out.frames[t] == crop(clip.frames[t], 16, 16, 224, 224));
  }

  TEST_CASE("every output is a verbatim sub-window of the resized source") {
    const Clip clip = natural_clip("c", 5, 240, 320);
    const SeedScope scope{{8}, "c", Kind::Translation, 5};
    const Clip out = translation_crop(clip, 16, scope);
    REQUIRE(out.frame_count() == 5);
    for (std::uint32_t t = 0; t < 5; ++t) {
      const Frame& o = out.frames[t];
      REQUIRE(o.height() == 224);
      REQUIRE(o.width() == 224);
      const Frame src = resize_and_square(clip.frames[t]);
      std::vector<std::pair<int, int>> hits;
      for (int top = 0; top <= 32; ++top)
        for (int left = 0; left <= 32; ++left)
          if (window_equals(src, o, top, left)) hits.emplace_back(top, left);
      REQUIRE(hits.size() == 1);
      const auto [dy, dx] = translation_offset(scope, t, 16);
      CHECK(hits[0] == std::make_pair(16 + dy, 16 + dx));
    }
  }

  TEST_CASE("geometry preconditions") {
    const Clip clip = natural_clip("c", 1, 64, 64);
    const SeedScope scope{{1}, "c", Kind::Translation, 1};
    CHECK(error_code_of([&] { translation_crop(clip, 4, scope, {300, 256}); }) == ErrorCode::FrameTooSmall);
    CHECK(error_code_of([&] { translation_crop(clip, 17, scope); }) == ErrorCode::InvalidArgument);
    const Clip small = translation_crop(clip, 2, scope, {24, 32});
    CHECK(small.height() == 24);
  }
}
