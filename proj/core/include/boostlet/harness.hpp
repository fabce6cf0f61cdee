#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "boostlet/catalog.hpp"
#include "boostlet/interaction.hpp"
#include "boostlet/pixel.hpp"
#include "boostlet/runtime.hpp"

namespace boostlet {

/// A run fails when strictly more than this fraction of pixels differ.
inline constexpr double kDefaultDiffThreshold = 0.05;

struct DiffReport {
  std::size_t total_pixels = 0;
  std::size_t differing_pixels = 0;
  double fraction = 0.0;
  std::uint8_t tolerance = 0;
  double threshold = kDefaultDiffThreshold;
  bool shape_mismatch = false;
  bool passed = false;
};

/// A pixel differs when any channel differs by more than `tolerance`. Images
/// of different shape never compare: every pixel counts as differing.
DiffReport diff(const PixelBuffer& a, const PixelBuffer& b, std::uint8_t tolerance = 0,
                double threshold = kDefaultDiffThreshold);

/// One ground-truth comparison. Relative paths resolve against `base_dir`
/// (the descriptor's directory).
struct RegressionCase {
  std::string name;
  std::filesystem::path base_dir;
  std::filesystem::path input;
  std::string plugin;  // manifest path or catalog id
  std::vector<Rect> boxes;
  std::vector<SeedPoint> seeds;
  std::filesystem::path ground_truth;
  std::optional<double> threshold;
  std::uint8_t tolerance = 0;
};

/// Parses a case descriptor (`*.case.json`). Errc::configuration for
/// unreadable or invalid descriptors.
RegressionCase load_case(const std::filesystem::path& descriptor);

struct CaseResult {
  std::string name;
  std::filesystem::path descriptor;
  bool passed = false;
  std::optional<Errc> error;
  std::string reason;
  std::optional<RunReport> run;
  std::optional<DiffReport> diff;
};

CaseResult run_case(const RegressionCase& regression, const Catalog& catalog);

struct SuiteReport {
  std::filesystem::path directory;
  std::vector<CaseResult> cases;

  std::size_t passed() const noexcept;
  bool success() const noexcept { return passed() == cases.size(); }
  /// 0 when every case passes, 1 otherwise.
  int exit_code() const noexcept { return success() ? 0 : 1; }
};

inline constexpr std::string_view kCaseSuffix = ".case.json";

/// Runs every `*.case.json` in `directory` (non-recursive), ordered by file
/// name, on up to `parallelism` threads (0 = hardware concurrency). A
/// missing or unreadable directory raises Errc::configuration.
SuiteReport run_suite(const std::filesystem::path& directory, const Catalog& catalog,
                      unsigned parallelism = 0);

std::string to_json(const DiffReport& report);
std::string to_json(const SuiteReport& report);

}  // namespace boostlet
