#include <gtest/gtest.h>

#include <fstream>
#include <numeric>

#include <json.hpp>

#include "boostlet/error.hpp"
#include "boostlet/harness.hpp"
#include "boostlet/png.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace boostlet {
namespace {

namespace fs = std::filesystem;

// Flips channel 0 of exactly `count` distinct pixels, chosen at random.
PixelBuffer with_differing(PixelBuffer img, std::size_t count, std::mt19937& rng) {
  std::vector<std::size_t> order(img.pixel_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < count; ++i) {
    auto& v = img.data()[order[i] * static_cast<std::size_t>(img.channels())];
    v = static_cast<std::uint8_t>(v ^ 0x80);
  }
  return img;
}

void copy_suite(const fs::path& to) {
  fs::copy(testing::fixture_dir() / "suite", to, fs::copy_options::recursive);
}

void write_text(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

TEST(Diff, IdenticalImagesPass) {
  std::mt19937 rng(1);
  const auto a = testing::random_buffer(rng, 20, 20, 4);
  const auto r = diff(a, a);
  EXPECT_EQ(r.differing_pixels, 0u);
  EXPECT_EQ(r.fraction, 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.total_pixels, 400u);
}

TEST(Diff, FivePercentBoundaryIsStrict) {
  std::mt19937 rng(2);
  for (int channels : {1, 4}) {
    const auto a = testing::random_buffer(rng, 100, 100, channels);
    const auto at = diff(a, with_differing(a, 500, rng));
    EXPECT_EQ(at.differing_pixels, 500u);
    EXPECT_DOUBLE_EQ(at.fraction, 0.05);
    EXPECT_TRUE(at.passed);
    const auto over = diff(a, with_differing(a, 501, rng));
    EXPECT_EQ(over.differing_pixels, 501u);
    EXPECT_FALSE(over.passed);
  }
}

TEST(Diff, ThresholdStraddleProperty) {
  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<int> side(1, 64);
    const int w = side(rng);
    const int h = side(rng);
    const auto a = testing::random_buffer(rng, w, h, 4);
    const std::size_t total = a.pixel_count();
    const std::size_t limit = total * 5 / 100;  // largest count with fraction <= 0.05
    for (std::size_t n : {limit, limit + 1}) {
      if (n > total) continue;
      const auto r = diff(a, with_differing(a, n, rng));
      EXPECT_EQ(r.differing_pixels, n);
      EXPECT_EQ(r.passed, n * 100 <= total * 5) << w << "x" << h << " n=" << n;
    }
  }
}

TEST(Diff, ToleranceRelaxesPerChannel) {
  const auto a = testing::constant_rgba(10, 10, 100, 100, 100);
  const auto b = testing::constant_rgba(10, 10, 101, 99, 100);
  EXPECT_EQ(diff(a, b, 1).differing_pixels, 0u);
  EXPECT_EQ(diff(a, b, 0).differing_pixels, 100u);
  const auto c = testing::constant_rgba(10, 10, 100, 100, 100, 253);
  EXPECT_EQ(diff(a, c, 1).differing_pixels, 100u);
  EXPECT_EQ(diff(a, c, 2).differing_pixels, 0u);
}

TEST(Diff, ShapeMismatchIsMaximalFailure) {
  const PixelBuffer a(10, 10, 4);
  const auto r = diff(a, PixelBuffer(10, 11, 4));
  EXPECT_TRUE(r.shape_mismatch);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.differing_pixels, r.total_pixels);
  EXPECT_EQ(r.total_pixels, 110u);
  EXPECT_TRUE(diff(a, PixelBuffer(10, 10, 1)).shape_mismatch);
}

TEST(Diff, MatchesCountingOracleAndIsSymmetric) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> side(1, 64);
  std::uniform_int_distribution<int> tol(0, 3);
  for (int i = 0; i < 200; ++i) {
    const int channels = i % 2 ? 4 : 1;
    const auto a = testing::random_buffer(rng, side(rng), side(rng), channels);
    // Nudge a random subset of samples by small amounts so tolerance matters.
    PixelBuffer b = a;
    std::uniform_int_distribution<int> nudge(-4, 4);
    for (auto& v : b.data()) {
      if (rng() % 3 == 0) v = static_cast<std::uint8_t>(std::clamp(v + nudge(rng), 0, 255));
    }
    const auto t = static_cast<std::uint8_t>(tol(rng));
    const auto ab = diff(a, b, t);
    EXPECT_EQ(ab.differing_pixels, oracle::count_differing(a, b, t));
    EXPECT_EQ(ab.differing_pixels, diff(b, a, t).differing_pixels);
    EXPECT_LE(ab.differing_pixels, ab.total_pixels);
    EXPECT_EQ(ab.passed, !(ab.fraction > 0.05));
  }
}

TEST(Diff, RejectsBadThreshold) {
  const PixelBuffer a(1, 1, 1);
  EXPECT_THROW(diff(a, a, 0, -0.1), Error);
  EXPECT_THROW(diff(a, a, 0, 1.5), Error);
}

TEST(RunCase, BundledSobelPassesExactly) {
  const auto result =
      run_case(load_case(testing::fixture_dir() / "suite" / "sobel-edge.case.json"), Catalog::with_builtins());
  ASSERT_TRUE(result.passed) << result.reason;
  ASSERT_TRUE(result.diff);
  EXPECT_EQ(result.diff->fraction, 0.0);
  EXPECT_EQ(result.diff->total_pixels, 256u * 256u);
}

TEST(RunCase, SixPercentCorruptionFails) {
  testing::TempDir dir;
  copy_suite(dir / "s");
  const fs::path truth = dir / "s" / "sobel-edge.truth.png";
  std::mt19937 rng(6);
  const auto pixels = read_png(truth);
  write_png(truth, with_differing(pixels, pixels.pixel_count() * 6 / 100, rng));
  const auto result = run_case(load_case(dir / "s" / "sobel-edge.case.json"), Catalog::with_builtins());
  EXPECT_FALSE(result.passed);
  ASSERT_TRUE(result.diff);
  EXPECT_NEAR(result.diff->fraction, 0.06, 1e-4);
  EXPECT_FALSE(result.error);
}

TEST(RunCase, MissingBoxFailsAsCancelled) {
  auto c = load_case(testing::fixture_dir() / "suite" / "roi-sobel.case.json");
  ASSERT_EQ(c.boxes.size(), 1u);
  c.boxes.clear();
  const auto result = run_case(c, Catalog::with_builtins());
  EXPECT_FALSE(result.passed);
  EXPECT_EQ(result.error, Errc::cancelled);
  ASSERT_TRUE(result.run);
  EXPECT_EQ(result.run->outcome, Outcome::cancelled);
  EXPECT_FALSE(result.diff);
}

TEST(RunCase, MissingFixtureIsConfigurationError) {
  auto c = load_case(testing::fixture_dir() / "suite" / "invert.case.json");
  c.ground_truth = "nope.png";
  const auto result = run_case(c, Catalog::with_builtins());
  EXPECT_FALSE(result.passed);
  EXPECT_EQ(result.error, Errc::configuration);
}

TEST(LoadCase, RejectsBadDescriptors) {
  testing::TempDir dir;
  const std::vector<std::string> bad{
      "{",
      R"({"input":"a.png","manifest":"invert","ground_truth":"b.png"})",
      R"({"name":"x","input":"a.png","manifest":"invert","ground_truth":"b.png","extra":1})",
      R"({"name":"x","input":"a.png","manifest":"invert","ground_truth":"b.png","threshold":2})",
      R"({"name":"x","input":"a.png","manifest":"invert","ground_truth":"b.png","interactions":[{"lasso":1}]})",
      R"({"name":"x","input":"a.png","manifest":"invert","ground_truth":"b.png","interactions":[{"box":"1,2"}]})",
  };
  for (const auto& text : bad) {
    write_text(dir / "c.case.json", text);
    try {
      load_case(dir / "c.case.json");
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::configuration) << text;
    }
  }
  EXPECT_THROW(load_case(dir / "absent.case.json"), Error);
}

TEST(RunSuite, BundledSuitePasses) {
  const auto report = run_suite(testing::fixture_dir() / "suite", Catalog::with_builtins());
  ASSERT_EQ(report.cases.size(), 4u);
  EXPECT_TRUE(report.success());
  EXPECT_EQ(report.exit_code(), 0);
  std::vector<std::string> names;
  for (const auto& c : report.cases) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"invert", "roi-sobel", "sobel-edge", "threshold-mask"}));
}

TEST(RunSuite, EmptyDirectorySucceeds) {
  testing::TempDir dir;
  write_text(dir / "notes.txt", "not a case");
  const auto report = run_suite(dir.path(), Catalog::with_builtins());
  EXPECT_TRUE(report.cases.empty());
  EXPECT_TRUE(report.success());
  EXPECT_EQ(report.exit_code(), 0);
}

TEST(RunSuite, PassAndFailBothReported) {
  testing::TempDir dir;
  copy_suite(dir / "s");
  fs::remove(dir / "s" / "roi-sobel.case.json");
  fs::remove(dir / "s" / "threshold-mask.case.json");
  // invert's truth now holds sobel output: that case must fail.
  fs::copy_file(dir / "s" / "sobel-edge.truth.png", dir / "s" / "invert.truth.png",
                fs::copy_options::overwrite_existing);
  const auto report = run_suite(dir / "s", Catalog::with_builtins());
  ASSERT_EQ(report.cases.size(), 2u);
  EXPECT_FALSE(report.cases[0].passed);
  EXPECT_TRUE(report.cases[1].passed);
  EXPECT_FALSE(report.success());
  EXPECT_EQ(report.exit_code(), 1);
}

TEST(RunSuite, UnreadableDescriptorFailsOnlyThatCase) {
  testing::TempDir dir;
  copy_suite(dir / "s");
  write_text(dir / "s" / "aaa-broken.case.json", "{ not json");
  const auto report = run_suite(dir / "s", Catalog::with_builtins());
  ASSERT_EQ(report.cases.size(), 5u);
  EXPECT_FALSE(report.cases[0].passed);
  EXPECT_EQ(report.cases[0].error, Errc::configuration);
  EXPECT_EQ(report.passed(), 4u);
  EXPECT_EQ(report.exit_code(), 1);
}

TEST(RunSuite, MissingDirectoryIsConfigurationError) {
  try {
    run_suite("/nonexistent/boostlet-suite", Catalog::with_builtins());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::configuration);
  }
}

TEST(RunSuite, DeterministicAcrossRunsAndParallelism) {
  const auto dir = testing::fixture_dir() / "suite";
  const auto catalog = Catalog::with_builtins();
  const auto first = to_json(run_suite(dir, catalog, 1));
  EXPECT_EQ(to_json(run_suite(dir, catalog, 4)), first);
  EXPECT_EQ(to_json(run_suite(dir, catalog)), first);
  const auto j = nlohmann::json::parse(first);
  EXPECT_EQ(j["success"], true);
  EXPECT_EQ(j["passed"], 4);
  EXPECT_EQ(j["cases"][0]["verdict"], "pass");
}

}  // namespace
}  // namespace boostlet
