#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boostlet/pixel.hpp"

namespace boostlet {

enum class Capability : std::uint8_t {
  image_read = 1 << 0,
  image_write = 1 << 1,
  mask_overlay = 1 << 2,
  box_select = 1 << 3,
  seed_select = 1 << 4,
};

class Capabilities {
 public:
  constexpr Capabilities() = default;
  constexpr Capabilities(std::initializer_list<Capability> caps) {
    for (auto c : caps) bits_ |= static_cast<std::uint8_t>(c);
  }
  constexpr bool has(Capability c) const noexcept {
    return (bits_ & static_cast<std::uint8_t>(c)) != 0;
  }
  constexpr bool contains(Capabilities other) const noexcept {
    return (bits_ & other.bits_) == other.bits_;
  }
  std::vector<std::string> names() const;
  friend constexpr bool operator==(Capabilities, Capabilities) = default;

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr Capabilities kRequiredCapabilities{Capability::image_read,
                                                    Capability::image_write};

struct SurfaceInfo {
  std::string id;
  int width = 0;
  int height = 0;

  long long area() const noexcept { return static_cast<long long>(width) * height; }
  friend bool operator==(const SurfaceInfo&, const SurfaceInfo&) = default;
};

/// Picks the surface with the largest pixel area, first one on ties. An
/// explicit override index bypasses the search.
std::size_t select_largest_surface(std::span<const SurfaceInfo> surfaces,
                                   std::optional<std::size_t> override_index = std::nullopt);

/// A drawing surface living in process memory, shared between the
/// environment that exposes it and the host bound to it.
class Canvas {
 public:
  Canvas(std::string id, PixelBuffer pixels);

  const std::string& id() const noexcept { return id_; }
  SurfaceInfo info() const { return {id_, pixels_.width(), pixels_.height()}; }
  const PixelBuffer& pixels() const noexcept { return pixels_; }
  /// Stores an RGBA expansion of `pixels`; dimensions must not change.
  void replace(PixelBuffer pixels);

 private:
  std::string id_;
  PixelBuffer pixels_;
};

/// What a host page or process exposes to detection. Markers name framework
/// globals (or the headless stand-ins), files back the file host, canvases
/// are the plain drawing surfaces the fallback targets.
struct Environment {
  std::set<std::string, std::less<>> markers;
  std::vector<std::filesystem::path> files;
  std::optional<std::filesystem::path> commit_path;
  std::vector<std::shared_ptr<Canvas>> canvases;
  std::optional<std::size_t> surface_override;

  bool has_marker(std::string_view marker) const { return markers.contains(marker); }
};

/// An attached visualization host. get_image/set_image/set_mask enforce the
/// protocol contract; subclasses only move pixels.
class Host {
 public:
  virtual ~Host() = default;

  virtual std::string_view adapter_name() const = 0;
  virtual Capabilities capabilities() const = 0;
  virtual SurfaceInfo surface() const = 0;

  /// RGBA snapshot of what the host currently displays.
  PixelBuffer get_image();
  /// Commits `pixels`; gray buffers are expanded to RGBA first. Throws
  /// Errc::commit on a dimension mismatch and leaves the host unchanged.
  void set_image(const PixelBuffer& pixels);
  void set_mask(const Mask& mask, Rgb color, double opacity);

 protected:
  virtual PixelBuffer read_surface() = 0;
  virtual void write_surface(PixelBuffer rgba) = 0;
  /// Hosts with Capability::mask_overlay render the mask natively.
  virtual void overlay_mask(const Mask& mask, Rgb color, double opacity);
};

class HostAdapter {
 public:
  virtual ~HostAdapter() = default;

  virtual std::string_view name() const = 0;
  virtual Capabilities capabilities() const = 0;
  virtual bool probe(const Environment& env) const = 0;
  virtual std::unique_ptr<Host> attach(const Environment& env) const = 0;
};

/// Adapter lookup by descending priority, registration order on ties, with
/// a dedicated fallback tried last.
class AdapterRegistry {
 public:
  AdapterRegistry& register_adapter(std::shared_ptr<const HostAdapter> adapter, int priority);
  AdapterRegistry& set_fallback(std::shared_ptr<const HostAdapter> adapter);

  /// Attaches the first adapter whose probe succeeds, else the fallback.
  std::unique_ptr<Host> detect(const Environment& env) const;
  /// Attaches the named adapter directly, skipping detection.
  std::unique_ptr<Host> attach(const Environment& env, std::string_view name) const;

  std::vector<std::string> names_in_detection_order() const;
  bool empty() const noexcept { return entries_.empty() && !fallback_; }

  /// file-host, memory-host, and the canvas fallback.
  static AdapterRegistry with_defaults();

 private:
  struct Entry {
    std::shared_ptr<const HostAdapter> adapter;
    int priority;
    std::size_t order;
  };
  std::vector<Entry> entries_;  // kept sorted in detection order
  std::shared_ptr<const HostAdapter> fallback_;
};

}  // namespace boostlet
