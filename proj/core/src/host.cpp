#include "boostlet/host.hpp"

#include <algorithm>

#include "boostlet/error.hpp"
#include "boostlet/hosts.hpp"

namespace boostlet {

std::vector<std::string> Capabilities::names() const {
  std::vector<std::string> out;
  if (has(Capability::image_read)) out.emplace_back("image-read");
  if (has(Capability::image_write)) out.emplace_back("image-write");
  if (has(Capability::mask_overlay)) out.emplace_back("mask-overlay");
  if (has(Capability::box_select)) out.emplace_back("box-select");
  if (has(Capability::seed_select)) out.emplace_back("seed-select");
  return out;
}

std::size_t select_largest_surface(std::span<const SurfaceInfo> surfaces,
                                   std::optional<std::size_t> override_index) {
  if (surfaces.empty()) fail(Errc::no_surface, "no drawing surface available");
  if (override_index) {
    if (*override_index >= surfaces.size()) {
      fail(Errc::validation, "surface override " + std::to_string(*override_index) +
                                 " out of range, " + std::to_string(surfaces.size()) +
                                 " surface(s) available");
    }
    return *override_index;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < surfaces.size(); ++i) {
    if (surfaces[i].area() > surfaces[best].area()) best = i;
  }
  return best;
}

Canvas::Canvas(std::string id, PixelBuffer pixels)
    : id_(std::move(id)),
      pixels_(pixels.channels() == 4 ? std::move(pixels) : grayscale_to_rgba(pixels)) {}

void Canvas::replace(PixelBuffer pixels) {
  if (pixels.channels() == 1) pixels = grayscale_to_rgba(pixels);
  if (!pixels.same_shape(pixels_)) fail(Errc::commit, "canvas " + id_ + " cannot change size");
  pixels_ = std::move(pixels);
}

PixelBuffer Host::get_image() {
  try {
    PixelBuffer pixels = read_surface();
    return pixels.channels() == 4 ? pixels : grayscale_to_rgba(pixels);
  } catch (const Error& e) {
    if (e.code() == Errc::acquisition) throw;
    fail(Errc::acquisition, std::string(adapter_name()) + ": " + e.what());
  }
}

void Host::set_image(const PixelBuffer& pixels) {
  const SurfaceInfo info = surface();
  if (pixels.width() != info.width || pixels.height() != info.height) {
    fail(Errc::commit, "commit of " + std::to_string(pixels.width()) + "x" +
                           std::to_string(pixels.height()) + " pixels to a " +
                           std::to_string(info.width) + "x" + std::to_string(info.height) +
                           " surface");
  }
  PixelBuffer rgba = pixels.channels() == 4 ? pixels : grayscale_to_rgba(pixels);
  try {
    write_surface(std::move(rgba));
  } catch (const Error& e) {
    if (e.code() == Errc::commit) throw;
    fail(Errc::commit, std::string(adapter_name()) + ": " + e.what());
  }
}

void Host::set_mask(const Mask& mask, Rgb color, double opacity) {
  const SurfaceInfo info = surface();
  if (mask.width() != info.width || mask.height() != info.height) {
    fail(Errc::validation, "mask does not match the active surface");
  }
  if (!mask.hardened()) fail(Errc::validation, "set_mask requires a hardened mask");
  if (!(opacity >= 0.0 && opacity <= 1.0)) {
    fail(Errc::validation, "mask opacity must lie in [0, 1]");
  }
  overlay_mask(mask, color, opacity);
}

void Host::overlay_mask(const Mask& mask, Rgb color, double opacity) {
  set_image(apply_mask(get_image(), mask, color, opacity));
}

AdapterRegistry& AdapterRegistry::register_adapter(std::shared_ptr<const HostAdapter> adapter,
                                                   int priority) {
  if (!adapter) fail(Errc::registration, "null adapter");
  const std::string_view name = adapter->name();
  if (name.empty()) fail(Errc::registration, "adapter name must not be empty");
  const bool taken =
      std::any_of(entries_.begin(), entries_.end(),
                  [&](const Entry& e) { return e.adapter->name() == name; }) ||
      (fallback_ && fallback_->name() == name);
  if (taken) fail(Errc::registration, "adapter '" + std::string(name) + "' already registered");
  if (!adapter->capabilities().contains(kRequiredCapabilities)) {
    fail(Errc::registration,
         "adapter '" + std::string(name) + "' must support image-read and image-write");
  }
  entries_.push_back({std::move(adapter), priority, entries_.size()});
  std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.priority != b.priority ? a.priority > b.priority : a.order < b.order;
  });
  return *this;
}

AdapterRegistry& AdapterRegistry::set_fallback(std::shared_ptr<const HostAdapter> adapter) {
  if (!adapter) fail(Errc::registration, "null fallback adapter");
  for (const auto& e : entries_) {
    if (e.adapter->name() == adapter->name()) {
      fail(Errc::registration,
           "adapter '" + std::string(adapter->name()) + "' already registered");
    }
  }
  if (!adapter->capabilities().contains(kRequiredCapabilities)) {
    fail(Errc::registration, "fallback adapter must support image-read and image-write");
  }
  fallback_ = std::move(adapter);
  return *this;
}

std::unique_ptr<Host> AdapterRegistry::detect(const Environment& env) const {
  for (const auto& e : entries_) {
    if (e.adapter->probe(env)) return e.adapter->attach(env);
  }
  if (fallback_ && fallback_->probe(env)) return fallback_->attach(env);
  fail(Errc::no_surface, "no compatible host and no drawing surface to fall back to");
}

std::unique_ptr<Host> AdapterRegistry::attach(const Environment& env,
                                              std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.adapter->name() == name) return e.adapter->attach(env);
  }
  if (fallback_ && fallback_->name() == name) return fallback_->attach(env);
  fail(Errc::validation, "no host adapter named '" + std::string(name) + "'");
}

std::vector<std::string> AdapterRegistry::names_in_detection_order() const {
  std::vector<std::string> names;
  for (const auto& e : entries_) names.emplace_back(e.adapter->name());
  if (fallback_) names.emplace_back(fallback_->name());
  return names;
}

AdapterRegistry AdapterRegistry::with_defaults() {
  AdapterRegistry registry;
  registry.register_adapter(std::make_shared<FileHostAdapter>(), 100);
  registry.register_adapter(std::make_shared<MemoryHostAdapter>(), 50);
  registry.set_fallback(std::make_shared<CanvasFallbackAdapter>());
  return registry;
}

}  // namespace boostlet
