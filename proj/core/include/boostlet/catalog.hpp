#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boostlet/manifest.hpp"

namespace boostlet {

/// sobel-edge, invert, histogram, threshold-mask.
std::vector<PluginManifest> builtin_manifests();

class Catalog {
 public:
  static Catalog with_builtins();

  /// Errc::validation when the id is already present.
  void add(PluginManifest manifest);

  const PluginManifest* find(std::string_view id) const noexcept;

  /// Grouped by category (declaration order), name-sorted within a group.
  /// `query` is a case-insensitive substring matched against name and
  /// description; empty matches everything.
  std::vector<PluginManifest> list(std::string_view query = {},
                                   std::optional<Category> category = std::nullopt) const;

  std::size_t size() const noexcept { return manifests_.size(); }

 private:
  std::vector<PluginManifest> manifests_;
};

/// A manifest file when `spec` names an existing path, otherwise a catalog
/// id. Neither resolves -> Errc::configuration.
PluginManifest resolve_plugin(std::string_view spec, const Catalog& catalog,
                              const std::filesystem::path& base_dir = {});

}  // namespace boostlet
