#include "boostlet/interaction.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <string>

#include "boostlet/error.hpp"

namespace boostlet {
namespace {

std::vector<int> parse_ints(std::string_view text, std::size_t expected, const char* what) {
  std::vector<int> values;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  bool dangling = false;
  while (true) {
    while (p != end && *p == ' ') ++p;
    int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    dangling = ec != std::errc{};
    if (dangling) break;
    values.push_back(v);
    p = next;
    while (p != end && *p == ' ') ++p;
    if (p == end || *p != ',') break;
    ++p;
  }
  if (dangling || p != end || values.size() != expected) {
    fail(Errc::validation, std::string("malformed ") + what + " '" + std::string(text) + "'");
  }
  return values;
}

std::string describe(const SurfaceInfo& bounds) {
  return std::to_string(bounds.width) + "x" + std::to_string(bounds.height);
}

}  // namespace

Rect parse_rect(std::string_view text) {
  const auto v = parse_ints(text, 4, "box (expected x,y,w,h)");
  return {v[0], v[1], v[2], v[3]};
}

SeedPoint parse_seed(std::string_view text) {
  const auto v = parse_ints(text, 2, "seed (expected x,y)");
  return {v[0], v[1]};
}

void check_in_bounds(const Rect& roi, const SurfaceInfo& bounds) {
  const bool ok = roi.x >= 0 && roi.y >= 0 && roi.w >= 1 && roi.h >= 1 &&
                  static_cast<long long>(roi.x) + roi.w <= bounds.width &&
                  static_cast<long long>(roi.y) + roi.h <= bounds.height;
  if (!ok) {
    fail(Errc::validation, "box " + std::to_string(roi.x) + "," + std::to_string(roi.y) + "," +
                               std::to_string(roi.w) + "," + std::to_string(roi.h) +
                               " exceeds the " + describe(bounds) + " surface");
  }
}

void check_in_bounds(const SeedPoint& seed, const SurfaceInfo& bounds) {
  if (seed.x < 0 || seed.y < 0 || seed.x >= bounds.width || seed.y >= bounds.height) {
    fail(Errc::validation, "seed " + std::to_string(seed.x) + "," + std::to_string(seed.y) +
                               " lies outside the " + describe(bounds) + " surface");
  }
}

ScriptedSource::ScriptedSource(std::vector<Rect> boxes, std::vector<SeedPoint> seeds)
    : boxes_(boxes.begin(), boxes.end()), seeds_(seeds.begin(), seeds.end()) {}

std::optional<Rect> ScriptedSource::next_box(const SurfaceInfo&, std::stop_token stop) {
  if (stop.stop_requested() || boxes_.empty()) return std::nullopt;
  Rect box = boxes_.front();
  boxes_.pop_front();
  return box;
}

std::optional<SeedPoint> ScriptedSource::next_seed(const SurfaceInfo&, std::stop_token stop) {
  if (stop.stop_requested() || seeds_.empty()) return std::nullopt;
  SeedPoint seed = seeds_.front();
  seeds_.pop_front();
  return seed;
}

std::optional<Rect> CallbackSource::next_box(const SurfaceInfo& bounds, std::stop_token stop) {
  if (!box_ || stop.stop_requested()) return std::nullopt;
  return box_(bounds, stop);
}

std::optional<SeedPoint> CallbackSource::next_seed(const SurfaceInfo& bounds,
                                                   std::stop_token stop) {
  if (!seed_ || stop.stop_requested()) return std::nullopt;
  return seed_(bounds, stop);
}

Rect request_box(InteractionSource& source, const SurfaceInfo& bounds, std::stop_token stop) {
  auto box = source.next_box(bounds, stop);
  if (!box) fail(Errc::cancelled, "box selection cancelled");
  check_in_bounds(*box, bounds);
  return *box;
}

std::vector<SeedPoint> request_seeds(InteractionSource& source, int howmany,
                                     const SurfaceInfo& bounds, std::stop_token stop) {
  if (howmany < 1) fail(Errc::validation, "seed count must be at least 1");
  std::vector<SeedPoint> seeds;
  seeds.reserve(static_cast<std::size_t>(howmany));
  for (int i = 0; i < howmany; ++i) {
    auto seed = source.next_seed(bounds, stop);
    if (!seed) {
      fail(Errc::cancelled, "seed selection cancelled after " + std::to_string(i) + " of " +
                                std::to_string(howmany) + " point(s)");
    }
    check_in_bounds(*seed, bounds);
    seeds.push_back(*seed);
  }
  return seeds;
}

PixelBuffer crop(const PixelBuffer& buffer, const Rect& roi) {
  check_in_bounds(roi, SurfaceInfo{"", buffer.width(), buffer.height()});
  PixelBuffer out(roi.w, roi.h, buffer.channels());
  const auto row_bytes = static_cast<std::size_t>(roi.w * buffer.channels());
  auto src = buffer.data();
  auto dst = out.data();
  for (int row = 0; row < roi.h; ++row) {
    const auto src_offset =
        (static_cast<std::size_t>(roi.y + row) * static_cast<std::size_t>(buffer.width()) +
         static_cast<std::size_t>(roi.x)) * static_cast<std::size_t>(buffer.channels());
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(src_offset), row_bytes,
                dst.begin() + static_cast<std::ptrdiff_t>(row * row_bytes));
  }
  return out;
}

}  // namespace boostlet
