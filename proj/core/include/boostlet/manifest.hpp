#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "boostlet/interaction.hpp"
#include "boostlet/pixel.hpp"

namespace boostlet {

enum class Category { data_visualization, filters, llms, machine_learning };

std::string_view to_string(Category category) noexcept;
std::optional<Category> parse_category(std::string_view text) noexcept;

using Seconds = std::chrono::duration<double>;

inline constexpr Seconds kDefaultHttpTimeout{30.0};
inline constexpr std::string_view kPngMediaType = "image/png";

/// Pipeline steps. Each struct carries the validated parameters of one
/// engine operation.
namespace step {

struct Filter {
  Kernel kernel;
};
struct RgbaToGrayscale {};
struct GrayscaleToRgba {};
/// Turns the gray working buffer into a hardened mask.
struct HardenMask {
  std::uint8_t threshold = kDefaultMaskThreshold;
};
/// Composites the current mask over the acquired image.
struct ApplyMask {
  Rgb color{255, 0, 0};
  double opacity = 0.5;
};
struct ComputeHistogram {};
/// Without an explicit rect the declared box interaction supplies the ROI.
struct Crop {
  std::optional<Rect> rect;
};
enum class InferResponse { image, mask };
/// POSTs the working buffer as PNG; the answer replaces the working image
/// or becomes the mask (PNG or raw bytes, hardened at `threshold`).
struct HttpInfer {
  std::string url;
  InferResponse response = InferResponse::image;
  std::optional<Seconds> timeout;  // unset: default_http_timeout()
  std::string content_type{kPngMediaType};
  std::uint8_t threshold = kDefaultMaskThreshold;
};
struct Invert {};

}  // namespace step

using StepSpec = std::variant<step::Filter, step::RgbaToGrayscale, step::GrayscaleToRgba,
                              step::HardenMask, step::ApplyMask, step::ComputeHistogram,
                              step::Crop, step::HttpInfer, step::Invert>;

std::string_view step_name(const StepSpec& step) noexcept;

struct InteractionNeeds {
  bool box = false;
  int seeds = 0;

  bool any() const noexcept { return box || seeds > 0; }
};

struct PluginManifest {
  std::string id;
  std::string name;
  Category category = Category::filters;
  std::string description;
  std::vector<StepSpec> pipeline;
  InteractionNeeds interactions;
};

/// Parses and validates a manifest document. Unknown fields anywhere are
/// rejected. JSON syntax errors raise Errc::parse, everything else
/// Errc::validation.
PluginManifest load_manifest(std::string_view json_text);
PluginManifest load_manifest_file(const std::filesystem::path& path);

std::string manifest_to_json(const PluginManifest& manifest);

}  // namespace boostlet
