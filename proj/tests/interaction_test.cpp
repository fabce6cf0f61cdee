#include <gtest/gtest.h>

#include <random>

#include "boostlet/error.hpp"
#include "boostlet/interaction.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace boostlet {
namespace {

const SurfaceInfo k100{"s", 100, 100};

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::io;
}

TEST(Parse, RectAndSeed) {
  EXPECT_EQ(parse_rect("0,0,10,10"), (Rect{0, 0, 10, 10}));
  EXPECT_EQ(parse_rect(" 1, 2 ,3,4"), (Rect{1, 2, 3, 4}));
  EXPECT_EQ(parse_seed("5,6"), (SeedPoint{5, 6}));
  for (const char* bad : {"", "1,2,3", "1,2,3,4,5", "a,b,c,d", "1,,3,4", "1,2,3,4,"}) {
    EXPECT_EQ(code_of([&] { parse_rect(bad); }), Errc::validation) << bad;
  }
  EXPECT_EQ(code_of([] { parse_seed("1"); }), Errc::validation);
}

TEST(RequestBox, ScriptedAnswers) {
  ScriptedSource src({{0, 0, 10, 10}}, {});
  EXPECT_EQ(request_box(src, k100), (Rect{0, 0, 10, 10}));
  EXPECT_EQ(code_of([&] { request_box(src, k100); }), Errc::cancelled);

  ScriptedSource out_of_bounds({{95, 95, 10, 10}}, {});
  EXPECT_EQ(code_of([&] { request_box(out_of_bounds, k100); }), Errc::validation);

  ScriptedSource degenerate({{0, 0, 0, 5}, {-1, 0, 5, 5}}, {});
  EXPECT_EQ(code_of([&] { request_box(degenerate, k100); }), Errc::validation);
  EXPECT_EQ(code_of([&] { request_box(degenerate, k100); }), Errc::validation);
}

TEST(RequestSeeds, ScriptedAnswers) {
  ScriptedSource two({}, {{1, 1}, {5, 5}});
  EXPECT_EQ(request_seeds(two, 2, k100), (std::vector<SeedPoint>{{1, 1}, {5, 5}}));

  ScriptedSource short_queue({}, {{1, 1}, {5, 5}});
  EXPECT_EQ(code_of([&] { request_seeds(short_queue, 3, k100); }), Errc::cancelled);

  ScriptedSource outside({}, {{200, 0}});
  EXPECT_EQ(code_of([&] { request_seeds(outside, 1, k100); }), Errc::validation);

  ScriptedSource any({}, {{1, 1}});
  EXPECT_EQ(code_of([&] { request_seeds(any, 0, k100); }), Errc::validation);
}

TEST(ScriptedSource, FifoAndRespectsStop) {
  ScriptedSource src({{0, 0, 1, 1}, {1, 1, 2, 2}}, {});
  std::stop_source stop;
  stop.request_stop();
  EXPECT_EQ(code_of([&] { request_box(src, k100, stop.get_token()); }), Errc::cancelled);
  EXPECT_EQ(src.pending_boxes(), 2u);
  EXPECT_EQ(request_box(src, k100), (Rect{0, 0, 1, 1}));
  EXPECT_EQ(request_box(src, k100), (Rect{1, 1, 2, 2}));
}

TEST(Interaction, ReturnedSelectionsAlwaysInBounds) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coord(-5, 60);
  std::uniform_int_distribution<int> side(1, 50);
  for (int i = 0; i < 500; ++i) {
    const SurfaceInfo bounds{"s", side(rng), side(rng)};
    ScriptedSource src({{coord(rng), coord(rng), coord(rng), coord(rng)}}, {{coord(rng), coord(rng)}});
    try {
      const Rect r = request_box(src, bounds);
      EXPECT_TRUE(r.x >= 0 && r.y >= 0 && r.w >= 1 && r.h >= 1 && r.x + r.w <= bounds.width &&
                  r.y + r.h <= bounds.height);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::validation);
    }
    try {
      const auto seeds = request_seeds(src, 1, bounds);
      ASSERT_EQ(seeds.size(), 1u);
      EXPECT_TRUE(seeds[0].x >= 0 && seeds[0].x < bounds.width && seeds[0].y >= 0 &&
                  seeds[0].y < bounds.height);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::validation);
    }
  }
}

TEST(CallbackSource, ForwardsAndCancels) {
  int calls = 0;
  CallbackSource src(
      [&](const SurfaceInfo& b, std::stop_token) -> std::optional<Rect> {
        ++calls;
        return Rect{0, 0, b.width, b.height};
      },
      [](const SurfaceInfo&, std::stop_token) -> std::optional<SeedPoint> { return std::nullopt; });
  EXPECT_EQ(src.kind(), SourceKind::interactive);
  EXPECT_EQ(request_box(src, k100), (Rect{0, 0, 100, 100}));
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(code_of([&] { request_seeds(src, 1, k100); }), Errc::cancelled);
}

TEST(CallbackSource, BlockedPromptObservesStop) {
  CallbackSource src(
      [](const SurfaceInfo&, std::stop_token stop) -> std::optional<Rect> {
        while (!stop.stop_requested()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
        return std::nullopt;
      },
      nullptr);
  std::stop_source stop;
  std::jthread canceller([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    stop.request_stop();
  });
  EXPECT_EQ(code_of([&] { request_box(src, k100, stop.get_token()); }), Errc::cancelled);
}

TEST(Crop, Examples) {
  std::mt19937 rng(2);
  const auto img = testing::random_buffer(rng, 7, 5, 4);
  EXPECT_EQ(crop(img, {0, 0, 7, 5}), img);
  const auto px = crop(img, {3, 2, 1, 1});
  ASSERT_EQ(px.width(), 1);
  for (int c = 0; c < 4; ++c) EXPECT_EQ(px.at(0, 0, c), img.at(3, 2, c));
  EXPECT_EQ(code_of([&] { crop(img, {5, 0, 3, 1}); }), Errc::validation);
}

TEST(Crop, MatchesCopyOracle) {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto img = testing::random_buffer(rng, 20, i % 2 ? 4 : 1);
    const int x = static_cast<int>(rng() % static_cast<unsigned>(img.width()));
    const int y = static_cast<int>(rng() % static_cast<unsigned>(img.height()));
    const int w = 1 + static_cast<int>(rng() % static_cast<unsigned>(img.width() - x));
    const int h = 1 + static_cast<int>(rng() % static_cast<unsigned>(img.height() - y));
    EXPECT_EQ(crop(img, {x, y, w, h}), oracle::copy_region(img, {x, y, w, h}));
  }
}

}  // namespace
}  // namespace boostlet
