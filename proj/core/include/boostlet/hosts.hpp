#pragma once

#include <memory>

#include "boostlet/host.hpp"

namespace boostlet {

inline constexpr std::string_view kFileHostMarker = "file-host";
inline constexpr std::string_view kMemoryHostMarker = "memory-host";

/// Headless host over PNG files. Each file in the environment is one
/// surface; commits update the in-memory image and, when a commit path is
/// set, rewrite that PNG atomically.
class FileHostAdapter final : public HostAdapter {
 public:
  std::string_view name() const override { return "file-host"; }
  Capabilities capabilities() const override { return kRequiredCapabilities; }
  bool probe(const Environment& env) const override;
  std::unique_ptr<Host> attach(const Environment& env) const override;
};

/// In-process viewer stand-in with a native overlay layer: masks are drawn
/// above the base canvas rather than burned into it.
class MemoryHostAdapter final : public HostAdapter {
 public:
  std::string_view name() const override { return "memory-host"; }
  Capabilities capabilities() const override {
    return {Capability::image_read, Capability::image_write, Capability::mask_overlay};
  }
  bool probe(const Environment& env) const override;
  std::unique_ptr<Host> attach(const Environment& env) const override;
};

/// Plain-surface fallback: binds to the largest canvas (or the override).
class CanvasFallbackAdapter final : public HostAdapter {
 public:
  std::string_view name() const override { return "canvas-fallback"; }
  Capabilities capabilities() const override { return kRequiredCapabilities; }
  bool probe(const Environment& env) const override { return !env.canvases.empty(); }
  std::unique_ptr<Host> attach(const Environment& env) const override;
};

}  // namespace boostlet
