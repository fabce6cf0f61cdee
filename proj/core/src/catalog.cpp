#include "boostlet/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "boostlet/error.hpp"

namespace boostlet {
namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool matches(const PluginManifest& m, const std::string& needle) {
  if (needle.empty()) return true;
  return lowercase(m.name).find(needle) != std::string::npos ||
         lowercase(m.description).find(needle) != std::string::npos;
}

}  // namespace

std::vector<PluginManifest> builtin_manifests() {
  std::vector<PluginManifest> out;

  PluginManifest sobel;
  sobel.id = "sobel-edge";
  sobel.name = "Sobel Edge";
  sobel.category = Category::filters;
  sobel.description = "Horizontal gradient edge detection with the 3x3 Sobel kernel.";
  sobel.pipeline = {step::Filter{Kernel::sobel_x()}};
  out.push_back(std::move(sobel));

  PluginManifest inv;
  inv.id = "invert";
  inv.name = "Invert";
  inv.category = Category::filters;
  inv.description = "Replaces every color sample v with 255 - v.";
  inv.pipeline = {step::Invert{}};
  out.push_back(std::move(inv));

  PluginManifest hist;
  hist.id = "histogram";
  hist.name = "Histogram";
  hist.category = Category::data_visualization;
  hist.description = "Counts gray levels into 256 bins for plotting.";
  hist.pipeline = {step::RgbaToGrayscale{}, step::ComputeHistogram{}};
  out.push_back(std::move(hist));

  PluginManifest mask;
  mask.id = "threshold-mask";
  mask.name = "Threshold Mask";
  mask.category = Category::filters;
  mask.description = "Highlights pixels at or above mid-gray with a red overlay.";
  mask.pipeline = {step::RgbaToGrayscale{}, step::HardenMask{kDefaultMaskThreshold},
                   step::ApplyMask{{255, 0, 0}, 0.5}};
  out.push_back(std::move(mask));

  return out;
}

Catalog Catalog::with_builtins() {
  Catalog catalog;
  for (auto& m : builtin_manifests()) catalog.add(std::move(m));
  return catalog;
}

void Catalog::add(PluginManifest manifest) {
  if (manifest.id.empty()) fail(Errc::validation, "manifest id must not be empty");
  if (find(manifest.id)) fail(Errc::validation, "duplicate plugin id '" + manifest.id + "'");
  manifests_.push_back(std::move(manifest));
}

const PluginManifest* Catalog::find(std::string_view id) const noexcept {
  auto it = std::find_if(manifests_.begin(), manifests_.end(),
                         [&](const PluginManifest& m) { return m.id == id; });
  return it == manifests_.end() ? nullptr : &*it;
}

std::vector<PluginManifest> Catalog::list(std::string_view query,
                                          std::optional<Category> category) const {
  const std::string needle = lowercase(query);
  std::vector<PluginManifest> out;
  for (const auto& m : manifests_) {
    if (category && m.category != *category) continue;
    if (matches(m, needle)) out.push_back(m);
  }
  std::stable_sort(out.begin(), out.end(), [](const PluginManifest& a, const PluginManifest& b) {
    if (a.category != b.category) return a.category < b.category;
    if (a.name != b.name) return a.name < b.name;
    return a.id < b.id;
  });
  return out;
}

PluginManifest resolve_plugin(std::string_view spec, const Catalog& catalog,
                              const std::filesystem::path& base_dir) {
  std::filesystem::path path(spec);
  if (!base_dir.empty() && path.is_relative()) path = base_dir / path;
  std::error_code ec;
  if (!spec.empty() && std::filesystem::is_regular_file(path, ec)) {
    try {
      return load_manifest_file(path);
    } catch (const Error& e) {
      if (e.code() == Errc::io) fail(Errc::configuration, e.what());
      throw;
    }
  }
  if (const auto* m = catalog.find(spec)) return *m;
  fail(Errc::configuration,
       "plugin '" + std::string(spec) + "' is neither a manifest file nor a known plugin id");
}

}  // namespace boostlet
