#include "boostlet/hosts.hpp"

#include <vector>

#include "boostlet/error.hpp"
#include "boostlet/png.hpp"

namespace boostlet {
namespace {

std::vector<SurfaceInfo> canvas_infos(const Environment& env) {
  std::vector<SurfaceInfo> infos;
  infos.reserve(env.canvases.size());
  for (const auto& canvas : env.canvases) infos.push_back(canvas->info());
  return infos;
}

std::shared_ptr<Canvas> pick_canvas(const Environment& env) {
  const auto infos = canvas_infos(env);
  return env.canvases[select_largest_surface(infos, env.surface_override)];
}

class FileHost final : public Host {
 public:
  FileHost(std::filesystem::path source, std::optional<std::filesystem::path> commit_path,
           PixelBuffer pixels)
      : source_(std::move(source)),
        commit_path_(std::move(commit_path)),
        pixels_(std::move(pixels)) {}

  std::string_view adapter_name() const override { return "file-host"; }
  Capabilities capabilities() const override { return kRequiredCapabilities; }
  SurfaceInfo surface() const override {
    return {source_.string(), pixels_.width(), pixels_.height()};
  }

 protected:
  PixelBuffer read_surface() override { return pixels_; }
  void write_surface(PixelBuffer rgba) override {
    if (commit_path_) write_png(*commit_path_, rgba);
    pixels_ = std::move(rgba);
  }

 private:
  std::filesystem::path source_;
  std::optional<std::filesystem::path> commit_path_;
  PixelBuffer pixels_;
};

class CanvasHost : public Host {
 public:
  explicit CanvasHost(std::shared_ptr<Canvas> canvas) : canvas_(std::move(canvas)) {}

  std::string_view adapter_name() const override { return "canvas-fallback"; }
  Capabilities capabilities() const override { return kRequiredCapabilities; }
  SurfaceInfo surface() const override { return canvas_->info(); }

 protected:
  PixelBuffer read_surface() override { return canvas_->pixels(); }
  void write_surface(PixelBuffer rgba) override { canvas_->replace(std::move(rgba)); }

  std::shared_ptr<Canvas> canvas_;
};

class MemoryHost final : public CanvasHost {
 public:
  using CanvasHost::CanvasHost;

  std::string_view adapter_name() const override { return "memory-host"; }
  Capabilities capabilities() const override {
    return {Capability::image_read, Capability::image_write, Capability::mask_overlay};
  }

 protected:
  PixelBuffer read_surface() override {
    PixelBuffer composite = canvas_->pixels();
    for (const auto& layer : overlays_) {
      composite = apply_mask(composite, layer.mask, layer.color, layer.opacity);
    }
    return composite;
  }
  void write_surface(PixelBuffer rgba) override {
    canvas_->replace(std::move(rgba));
    overlays_.clear();
  }
  void overlay_mask(const Mask& mask, Rgb color, double opacity) override {
    overlays_.push_back({mask, color, opacity});
  }

 private:
  struct Overlay {
    Mask mask;
    Rgb color;
    double opacity;
  };
  std::vector<Overlay> overlays_;
};

}  // namespace

bool FileHostAdapter::probe(const Environment& env) const {
  return env.has_marker(kFileHostMarker) && !env.files.empty();
}

std::unique_ptr<Host> FileHostAdapter::attach(const Environment& env) const {
  if (env.files.empty()) fail(Errc::no_surface, "file host has no input files");
  std::vector<PixelBuffer> images;
  std::vector<SurfaceInfo> infos;
  for (const auto& path : env.files) {
    try {
      PixelBuffer pixels = read_png(path);
      if (pixels.channels() == 1) pixels = grayscale_to_rgba(pixels);
      infos.push_back({path.string(), pixels.width(), pixels.height()});
      images.push_back(std::move(pixels));
    } catch (const Error& e) {
      fail(Errc::acquisition, "cannot load " + path.string() + ": " + e.what());
    }
  }
  const std::size_t index = select_largest_surface(infos, env.surface_override);
  return std::make_unique<FileHost>(env.files[index], env.commit_path, std::move(images[index]));
}

bool MemoryHostAdapter::probe(const Environment& env) const {
  return env.has_marker(kMemoryHostMarker) && !env.canvases.empty();
}

std::unique_ptr<Host> MemoryHostAdapter::attach(const Environment& env) const {
  return std::make_unique<MemoryHost>(pick_canvas(env));
}

std::unique_ptr<Host> CanvasFallbackAdapter::attach(const Environment& env) const {
  return std::make_unique<CanvasHost>(pick_canvas(env));
}

}  // namespace boostlet
