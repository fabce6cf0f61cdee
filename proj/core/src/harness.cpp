#include "boostlet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "boostlet/hosts.hpp"
#include "boostlet/png.hpp"
#include "json_util.hpp"

namespace boostlet {
namespace {

using detail::Json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_relative() ? base / p : p;
}

Json diff_json(const DiffReport& d) {
  return {{"total_pixels", d.total_pixels},     {"differing_pixels", d.differing_pixels},
          {"fraction", d.fraction},             {"tolerance", d.tolerance},
          {"threshold", d.threshold},           {"shape_mismatch", d.shape_mismatch},
          {"verdict", d.passed ? "pass" : "fail"}};
}

CaseResult case_failure(CaseResult result, Errc code, std::string reason) {
  result.passed = false;
  result.error = code;
  result.reason = std::move(reason);
  return result;
}

}  // namespace

DiffReport diff(const PixelBuffer& a, const PixelBuffer& b, std::uint8_t tolerance,
                double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    fail(Errc::validation, "diff threshold must lie in [0, 1]");
  }
  DiffReport report;
  report.tolerance = tolerance;
  report.threshold = threshold;
  if (!a.same_shape(b)) {
    report.shape_mismatch = true;
    report.total_pixels = std::max(a.pixel_count(), b.pixel_count());
    report.differing_pixels = report.total_pixels;
    report.fraction = 1.0;
    report.passed = false;
    return report;
  }

  const auto channels = static_cast<std::size_t>(a.channels());
  auto da = a.data();
  auto db = b.data();
  std::size_t differing = 0;
  for (std::size_t i = 0; i < da.size(); i += channels) {
    for (std::size_t c = 0; c < channels; ++c) {
      const int delta = std::abs(int{da[i + c]} - int{db[i + c]});
      if (delta > tolerance) {
        ++differing;
        break;
      }
    }
  }
  report.total_pixels = a.pixel_count();
  report.differing_pixels = differing;
  report.fraction = static_cast<double>(differing) / static_cast<double>(report.total_pixels);
  report.passed = !(report.fraction > threshold);
  return report;
}

RegressionCase load_case(const std::filesystem::path& descriptor) {
  try {
    const auto bytes = read_file(descriptor);
    const Json j = detail::parse_json(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
        "case descriptor");
    detail::require_object(j, "case descriptor");
    detail::reject_unknown_fields(j, {"name", "input", "manifest", "interactions", "ground_truth",
                                      "threshold", "tolerance"},
                                  "case descriptor");
    RegressionCase c;
    c.base_dir = descriptor.parent_path();
    c.name = detail::require_string(j, "name", "case descriptor");
    c.input = detail::require_string(j, "input", "case descriptor");
    c.plugin = detail::require_string(j, "manifest", "case descriptor");
    c.ground_truth = detail::require_string(j, "ground_truth", "case descriptor");
    if (auto it = j.find("threshold"); it != j.end()) {
      if (!it->is_number() || !(it->get<double>() >= 0.0 && it->get<double>() <= 1.0)) {
        fail(Errc::validation, "'threshold' must be a fraction in [0, 1]");
      }
      c.threshold = it->get<double>();
    }
    if (auto it = j.find("tolerance"); it != j.end()) {
      c.tolerance = static_cast<std::uint8_t>(detail::require_integer(*it, "tolerance",
                                                                      "case descriptor", 0, 255));
    }
    if (auto it = j.find("interactions"); it != j.end()) {
      if (!it->is_array()) fail(Errc::validation, "'interactions' must be an array");
      for (const auto& item : *it) {
        detail::require_object(item, "interaction");
        detail::reject_unknown_fields(item, {"box", "seed"}, "interaction");
        if (item.size() != 1) fail(Errc::validation, "interaction needs exactly one of box or seed");
        if (auto b = item.find("box"); b != item.end()) {
          if (b->is_string()) {
            c.boxes.push_back(parse_rect(b->get<std::string>()));
          } else if (b->is_array() && b->size() == 4) {
            std::vector<int> v;
            for (const auto& x : *b) v.push_back(static_cast<int>(detail::require_integer(x, "box", "interaction", -(1 << 20), 1 << 20)));
            c.boxes.push_back({v[0], v[1], v[2], v[3]});
          } else {
            fail(Errc::validation, "box must be \"x,y,w,h\" or [x, y, w, h]");
          }
        } else {
          const Json& s = item.at("seed");
          if (s.is_string()) {
            c.seeds.push_back(parse_seed(s.get<std::string>()));
          } else if (s.is_array() && s.size() == 2) {
            c.seeds.push_back({static_cast<int>(detail::require_integer(s[0], "seed", "interaction", -(1 << 20), 1 << 20)),
                               static_cast<int>(detail::require_integer(s[1], "seed", "interaction", -(1 << 20), 1 << 20))});
          } else {
            fail(Errc::validation, "seed must be \"x,y\" or [x, y]");
          }
        }
      }
    }
    return c;
  } catch (const Error& e) {
    fail(Errc::configuration, descriptor.string() + ": " + e.what());
  }
}

CaseResult run_case(const RegressionCase& regression, const Catalog& catalog) {
  CaseResult result;
  result.name = regression.name;

  const auto input = resolve(regression.base_dir, regression.input);
  const auto truth_path = resolve(regression.base_dir, regression.ground_truth);
  std::optional<PluginManifest> manifest;
  std::optional<PixelBuffer> truth;
  try {
    for (const auto& p : {input, truth_path}) {
      if (!std::filesystem::is_regular_file(p)) fail(Errc::configuration, "missing fixture " + p.string());
    }
    manifest = resolve_plugin(regression.plugin, catalog, regression.base_dir);
    truth = read_png(truth_path);
    if (truth->channels() == 1) truth = grayscale_to_rgba(*truth);
  } catch (const Error& e) {
    return case_failure(std::move(result), Errc::configuration, e.what());
  }

  Environment env;
  env.markers.insert(std::string(kFileHostMarker));
  env.files.push_back(input);

  std::unique_ptr<Host> host;
  try {
    host = AdapterRegistry::with_defaults().detect(env);
  } catch (const Error& e) {
    return case_failure(std::move(result), Errc::configuration, e.what());
  }

  ScriptedSource source(regression.boxes, regression.seeds);
  RunReport run = run_plugin(*manifest, *host, source);
  result.run = run;
  if (!run.committed()) {
    return case_failure(std::move(result), run.error.value_or(Errc::validation),
                        std::string(to_string(run.outcome)) + ": " + run.reason);
  }

  const PixelBuffer captured = host->get_image();
  result.diff = diff(captured, *truth, regression.tolerance,
                     regression.threshold.value_or(kDefaultDiffThreshold));
  result.passed = result.diff->passed;
  if (!result.passed) {
    result.reason = result.diff->shape_mismatch
                        ? "output shape differs from ground truth"
                        : std::to_string(result.diff->differing_pixels) + " of " +
                              std::to_string(result.diff->total_pixels) + " pixels differ";
  }
  return result;
}

std::size_t SuiteReport::passed() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; }));
}

SuiteReport run_suite(const std::filesystem::path& directory, const Catalog& catalog,
                      unsigned parallelism) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    fail(Errc::configuration, "suite directory " + directory.string() + " does not exist");
  }
  std::vector<std::filesystem::path> descriptors;
  std::filesystem::directory_iterator it(directory, ec);
  if (ec) fail(Errc::configuration, "cannot read suite directory " + directory.string());
  for (const auto& entry : it) {
    const std::string name = entry.path().filename().string();
    if (name.size() > kCaseSuffix.size() && name.ends_with(kCaseSuffix)) {
      descriptors.push_back(entry.path());
    }
  }
  std::sort(descriptors.begin(), descriptors.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  SuiteReport report;
  report.directory = directory;
  report.cases.resize(descriptors.size());

  auto run_one = [&](std::size_t i) {
    CaseResult result;
    try {
      result = run_case(load_case(descriptors[i]), catalog);
    } catch (const Error& e) {
      result.name = descriptors[i].filename().string();
      result = case_failure(std::move(result), Errc::configuration, e.what());
    }
    result.descriptor = descriptors[i];
    report.cases[i] = std::move(result);
  };

  if (parallelism == 0) parallelism = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = std::min<std::size_t>(parallelism, descriptors.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < descriptors.size(); ++i) run_one(i);
    return report;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < descriptors.size(); i = next++) run_one(i);
      });
    }
  }
  return report;
}

std::string to_json(const DiffReport& report) { return diff_json(report).dump(2); }

std::string to_json(const SuiteReport& report) {
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json j{{"name", c.name},
           {"descriptor", c.descriptor.filename().string()},
           {"verdict", c.passed ? "pass" : "fail"},
           {"error", c.error ? Json(std::string(to_string(*c.error))) : Json(nullptr)},
           {"reason", c.reason}};
    j["diff"] = c.diff ? diff_json(*c.diff) : Json(nullptr);
    j["run"] = c.run ? Json::parse(to_json(*c.run, {.timings = false, .indent = -1}))
                     : Json(nullptr);
    cases.push_back(std::move(j));
  }
  Json j{{"success", report.success()},
         {"passed", report.passed()},
         {"failed", report.cases.size() - report.passed()},
         {"cases", std::move(cases)}};
  return j.dump(2);
}

}  // namespace boostlet
