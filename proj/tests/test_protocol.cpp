#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vidshift/protocol.hpp"

using namespace vidshift;
using vidshift::testing::error_code_of;
using vidshift::testing::natural_clip;
using vidshift::testing::natural_frame;

using Starts = std::vector<std::size_t>;

TEST_SUITE("temporal crops") {
  TEST_CASE("worked examples") {
    CHECK(crop_span(8, 8) == 57);
    CHECK(temporal_crop_starts(100, 5, 8, 8) == Starts{0, 11, 22, 32, 43});
    CHECK(crop_span(16, 4) == 61);
    CHECK(temporal_crop_starts(64, 1, 16, 4) == Starts{1});
    CHECK(temporal_crop_starts(30, 5, 8, 8) == Starts{0, 0, 0, 0, 0});
    CHECK(temporal_crop_starts(30, 1, 8, 8) == Starts{0});
  }

  TEST_CASE("frame reads past the end clamp to the last frame") {
    using Idx = std::vector<std::size_t>;
    CHECK(crop_frame_indices(30, 0, 8, 8) == Idx{0, 8, 16, 24, 29, 29, 29, 29});
    CHECK(crop_frame_indices(100, 43, 8, 8) == Idx{43, 51, 59, 67, 75, 83, 91, 99});
  }

  TEST_CASE("exhaustive start properties") {
    const std::pair<std::size_t, std::size_t> sampling[] = {{8, 8}, {32, 2}, {16, 5}, {16, 4}, {8, 32}, {1, 1}};
    for (std::size_t T = 1; T <= 512; ++T)
      for (std::size_t n : {1u, 5u, 10u})
        for (auto [len, stride] : sampling) {
          const auto starts = temporal_crop_starts(T, n, len, stride);
          const std::size_t span = crop_span(len, stride);
          const std::size_t room = T > span ? T - span : 0;
          REQUIRE(starts.size() == n);
          REQUIRE(std::is_sorted(starts.begin(), starts.end()));
          for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(starts[i] <= T - 1);
            const double expect = n == 1 ? std::floor(room / 2.0) : std::round(double(i) * room / double(n - 1));
            REQUIRE(double(starts[i]) == expect);
          }
          if (T >= span && n >= 2) {
            REQUIRE(starts.front() == 0);
            REQUIRE(starts.back() == T - span);
          }
        }
  }

  TEST_CASE("preconditions") {
    CHECK(error_code_of([] { temporal_crop_starts(0, 1, 8, 8); }) == ErrorCode::InvalidArgument);
    CHECK(error_code_of([] { temporal_crop_starts(10, 0, 8, 8); }) == ErrorCode::InvalidArgument);
    ProtocolConfig bad;
    bad.clip_len = 0;
    CHECK(error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);
  }
}

TEST_SUITE("spatial crops") {
  TEST_CASE("centre windows") {
    const Frame sq = natural_frame(256, 256);
    CHECK(center_crop(sq, 224) == crop(sq, 16, 16, 224, 224));
    const Frame exact = natural_frame(224, 224);
    CHECK(center_crop(exact, 224) == exact);
    const Frame wide = natural_frame(256, 320);  // 320 wide, 256 tall
    CHECK(center_crop(wide, 224) == crop(wide, 16, 48, 224, 224));
  }

  TEST_CASE("small frames are resized up first") {
    const Frame small = natural_frame(120, 160);
    const Frame out = center_crop(small, 224);
    CHECK(out.height() == 224);
    const Frame up = resize_shorter_side(small, 256);
    CHECK(out == crop(up, 16, (up.width() - 224) / 2, 224, 224));
    CHECK(error_code_of([&] { center_crop(small, 224, 200); }) == ErrorCode::FrameTooSmall);
    CHECK(error_code_of([&] { center_crop(small, 224, 0); }) == ErrorCode::FrameTooSmall);
  }

  TEST_CASE("centre crop is idempotent") {
    for (auto [h, w] : {std::pair{224, 224}, {256, 256}, {240, 320}, {300, 231}, {100, 90}})
      for (int size : {32, 112, 224}) {
        const Frame once = center_crop(natural_frame(h, w), size);
        CHECK(center_crop(once, size) == once);
      }
  }
}

TEST_SUITE("protocol config") {
  TEST_CASE("presets") {
    CHECK(protocol_preset("kinetics10")->temporal_crops == 10);
    CHECK(protocol_preset("ucf5")->temporal_crops == 5);
    CHECK(protocol_preset("hmdb5")->temporal_crops == 5);
    CHECK(protocol_preset("ssv2-1")->temporal_crops == 1);
    CHECK_FALSE(protocol_preset("imagenet"));
    const auto k = *protocol_preset("kinetics10");
    CHECK(k.crop_size == 224);
    CHECK(k.resize_size == 256);
  }

  TEST_CASE("per-model sampling") {
    const std::tuple<const char*, std::size_t, std::size_t> table[] = {
        {"r3d", 8, 8}, {"i3d", 8, 8}, {"slowfast", 32, 2}, {"x3d", 16, 5}, {"mvit", 16, 4}, {"timesformer", 8, 32}};
    for (auto [model, len, stride] : table) {
      const auto c = with_model_sampling(*protocol_preset("ucf5"), model);
      REQUIRE(c.has_value());
      CHECK(c->clip_len == len);
      CHECK(c->frame_stride == stride);
      CHECK(c->temporal_crops == 5);
    }
    CHECK_FALSE(with_model_sampling({}, "resnet"));
  }

  TEST_CASE("views") {
    const Clip clip = natural_clip("c", 70, 240, 320);
    ProtocolConfig cfg = *protocol_preset("ucf5");
    const auto views = protocol_views(clip, cfg);
    REQUIRE(views.size() == 5);
    const auto starts = temporal_crop_starts(70, 5, 8, 8);
    for (std::size_t i = 0; i < 5; ++i) {
      REQUIRE(views[i].frame_count() == 8);
      CHECK(views[i].height() == 224);
      CHECK(views[i].width() == 224);
      const auto idx = crop_frame_indices(70, starts[i], 8, 8);
      CHECK(views[i].frames[3] == center_crop(clip.frames[idx[3]], 224));
    }
  }
}
