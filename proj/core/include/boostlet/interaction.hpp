#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <stop_token>
#include <string_view>
#include <vector>

#include "boostlet/host.hpp"
#include "boostlet/pixel.hpp"

namespace boostlet {

/// Region of interest in image pixel coordinates.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct SeedPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const SeedPoint&, const SeedPoint&) = default;
};

/// "x,y,w,h" and "x,y". Malformed text is a validation error; bounds are
/// checked separately.
Rect parse_rect(std::string_view text);
SeedPoint parse_seed(std::string_view text);

void check_in_bounds(const Rect& roi, const SurfaceInfo& bounds);
void check_in_bounds(const SeedPoint& seed, const SurfaceInfo& bounds);

enum class SourceKind { scripted, interactive };

/// Supplier of user selections. A disengaged optional means the user
/// cancelled (or a scripted queue ran dry).
class InteractionSource {
 public:
  virtual ~InteractionSource() = default;
  virtual SourceKind kind() const noexcept = 0;
  virtual std::optional<Rect> next_box(const SurfaceInfo& bounds, std::stop_token stop) = 0;
  virtual std::optional<SeedPoint> next_seed(const SurfaceInfo& bounds, std::stop_token stop) = 0;
};

/// Answers from fixed FIFO queues; used by the CLI and regression cases.
class ScriptedSource final : public InteractionSource {
 public:
  ScriptedSource() = default;
  ScriptedSource(std::vector<Rect> boxes, std::vector<SeedPoint> seeds);

  void push_box(Rect box) { boxes_.push_back(box); }
  void push_seed(SeedPoint seed) { seeds_.push_back(seed); }
  std::size_t pending_boxes() const noexcept { return boxes_.size(); }
  std::size_t pending_seeds() const noexcept { return seeds_.size(); }

  SourceKind kind() const noexcept override { return SourceKind::scripted; }
  std::optional<Rect> next_box(const SurfaceInfo& bounds, std::stop_token stop) override;
  std::optional<SeedPoint> next_seed(const SurfaceInfo& bounds, std::stop_token stop) override;

 private:
  std::deque<Rect> boxes_;
  std::deque<SeedPoint> seeds_;
};

/// Bridges to a frontend widget. The callbacks block until the user answers
/// and must return nullopt promptly once `stop` is requested.
class CallbackSource final : public InteractionSource {
 public:
  using BoxPrompt = std::function<std::optional<Rect>(const SurfaceInfo&, std::stop_token)>;
  using SeedPrompt = std::function<std::optional<SeedPoint>(const SurfaceInfo&, std::stop_token)>;

  CallbackSource(BoxPrompt box, SeedPrompt seed)
      : box_(std::move(box)), seed_(std::move(seed)) {}

  SourceKind kind() const noexcept override { return SourceKind::interactive; }
  std::optional<Rect> next_box(const SurfaceInfo& bounds, std::stop_token stop) override;
  std::optional<SeedPoint> next_seed(const SurfaceInfo& bounds, std::stop_token stop) override;

 private:
  BoxPrompt box_;
  SeedPrompt seed_;
};

/// Blocks until the source answers. Throws Errc::cancelled on cancellation
/// and Errc::validation for a selection outside `bounds`.
Rect request_box(InteractionSource& source, const SurfaceInfo& bounds,
                 std::stop_token stop = {});
std::vector<SeedPoint> request_seeds(InteractionSource& source, int howmany,
                                     const SurfaceInfo& bounds, std::stop_token stop = {});

PixelBuffer crop(const PixelBuffer& buffer, const Rect& roi);

}  // namespace boostlet
