#include "boostlet/manifest.hpp"

#include <algorithm>
#include <cmath>

#include "boostlet/error.hpp"
#include "boostlet/http.hpp"
#include "boostlet/png.hpp"
#include "json_util.hpp"

namespace boostlet {
namespace {

using detail::Json;
using detail::reject_unknown_fields;
using detail::require_field;
using detail::require_integer;
using detail::require_object;
using detail::require_string;

constexpr std::array<std::pair<Category, std::string_view>, 4> kCategoryNames{{
    {Category::data_visualization, "data-visualization"},
    {Category::filters, "filters"},
    {Category::llms, "llms"},
    {Category::machine_learning, "machine-learning"},
}};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const Json* optional_params(const Json& params, std::string_view key) {
  auto it = params.find(key);
  return it == params.end() ? nullptr : &*it;
}

double require_unit_interval(const Json& v, std::string_view key, std::string_view where) {
  if (!v.is_number() || !(v.get<double>() >= 0.0 && v.get<double>() <= 1.0)) {
    fail(Errc::validation, "field '" + std::string(key) + "' in " + std::string(where) +
                               " must be a number in [0, 1]");
  }
  return v.get<double>();
}

Rgb parse_color(const Json& v, std::string_view where) {
  if (!v.is_array() || v.size() != 3) {
    fail(Errc::validation, "field 'color' in " + std::string(where) + " must be [r, g, b]");
  }
  return {static_cast<std::uint8_t>(require_integer(v[0], "color", where, 0, 255)),
          static_cast<std::uint8_t>(require_integer(v[1], "color", where, 0, 255)),
          static_cast<std::uint8_t>(require_integer(v[2], "color", where, 0, 255))};
}

Rect parse_rect_value(const Json& v, std::string_view where) {
  if (v.is_string()) return parse_rect(v.get<std::string>());
  if (!v.is_array() || v.size() != 4) {
    fail(Errc::validation, "rect in " + std::string(where) + " must be [x, y, w, h]");
  }
  constexpr long long kMax = 1 << 20;
  Rect r{static_cast<int>(require_integer(v[0], "x", where, 0, kMax)),
         static_cast<int>(require_integer(v[1], "y", where, 0, kMax)),
         static_cast<int>(require_integer(v[2], "w", where, 1, kMax)),
         static_cast<int>(require_integer(v[3], "h", where, 1, kMax))};
  return r;
}

StepSpec parse_step(const Json& j, std::size_t index) {
  const std::string where = "pipeline[" + std::to_string(index) + "]";
  require_object(j, where);
  reject_unknown_fields(j, {"op", "params"}, where);
  const std::string op = require_string(j, "op", where);

  static const Json kEmpty = Json::object();
  const Json& params = j.contains("params") ? j.at("params") : kEmpty;
  const std::string pwhere = where + ".params (" + op + ")";
  require_object(params, pwhere);

  if (op == "filter") {
    reject_unknown_fields(params, {"size", "weights"}, pwhere);
    const auto size = require_integer(require_field(params, "size", pwhere), "size", pwhere, 1, 99);
    const Json& weights = require_field(params, "weights", pwhere);
    if (!weights.is_array()) fail(Errc::validation, "'weights' in " + pwhere + " must be an array");
    std::vector<double> w;
    for (const auto& x : weights) {
      if (!x.is_number()) fail(Errc::validation, "'weights' in " + pwhere + " must be numbers");
      w.push_back(x.get<double>());
    }
    return step::Filter{Kernel(static_cast<int>(size), std::move(w))};
  }
  if (op == "rgba_to_grayscale" || op == "grayscale_to_rgba" || op == "compute_histogram" ||
      op == "invert") {
    reject_unknown_fields(params, {}, pwhere);
    if (op == "rgba_to_grayscale") return step::RgbaToGrayscale{};
    if (op == "grayscale_to_rgba") return step::GrayscaleToRgba{};
    if (op == "compute_histogram") return step::ComputeHistogram{};
    return step::Invert{};
  }
  if (op == "harden_mask") {
    reject_unknown_fields(params, {"threshold"}, pwhere);
    step::HardenMask s;
    if (auto* t = optional_params(params, "threshold")) {
      s.threshold = static_cast<std::uint8_t>(require_integer(*t, "threshold", pwhere, 0, 255));
    }
    return s;
  }
  if (op == "apply_mask") {
    reject_unknown_fields(params, {"color", "opacity"}, pwhere);
    step::ApplyMask s;
    if (auto* c = optional_params(params, "color")) s.color = parse_color(*c, pwhere);
    if (auto* o = optional_params(params, "opacity")) {
      s.opacity = require_unit_interval(*o, "opacity", pwhere);
    }
    return s;
  }
  if (op == "crop") {
    reject_unknown_fields(params, {"rect"}, pwhere);
    step::Crop s;
    if (auto* r = optional_params(params, "rect")) s.rect = parse_rect_value(*r, pwhere);
    return s;
  }
  if (op == "http_infer") {
    reject_unknown_fields(params, {"url", "response", "timeout", "content_type", "threshold"},
                          pwhere);
    step::HttpInfer s;
    s.url = require_string(params, "url", pwhere);
    parse_url(s.url);
    if (auto* r = optional_params(params, "response")) {
      if (*r == "image") {
        s.response = step::InferResponse::image;
      } else if (*r == "mask") {
        s.response = step::InferResponse::mask;
      } else {
        fail(Errc::validation, "'response' in " + pwhere + " must be \"image\" or \"mask\"");
      }
    }
    if (auto* t = optional_params(params, "timeout")) {
      if (!t->is_number() || !(t->get<double>() > 0) || !std::isfinite(t->get<double>())) {
        fail(Errc::validation, "'timeout' in " + pwhere + " must be a positive number of seconds");
      }
      s.timeout = Seconds(t->get<double>());
    }
    if (params.contains("content_type")) {
      s.content_type = require_string(params, "content_type", pwhere);
      if (s.content_type.empty()) fail(Errc::validation, "'content_type' in " + pwhere + " is empty");
    }
    if (auto* t = optional_params(params, "threshold")) {
      s.threshold = static_cast<std::uint8_t>(require_integer(*t, "threshold", pwhere, 0, 255));
    }
    return s;
  }
  fail(Errc::validation, "unknown op '" + op + "' in " + where);
}

InteractionNeeds parse_interactions(const Json& j) {
  if (!j.is_array()) fail(Errc::validation, "'interactions' must be an array");
  InteractionNeeds needs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "interactions[" + std::to_string(i) + "]";
    const Json& item = j[i];
    require_object(item, where);
    const std::string type = require_string(item, "type", where);
    if (type == "box") {
      reject_unknown_fields(item, {"type"}, where);
      if (needs.box) fail(Errc::validation, "box interaction declared twice");
      needs.box = true;
    } else if (type == "seeds") {
      reject_unknown_fields(item, {"type", "count"}, where);
      if (needs.seeds > 0) fail(Errc::validation, "seeds interaction declared twice");
      needs.seeds = static_cast<int>(
          require_integer(require_field(item, "count", where), "count", where, 1, 4096));
    } else {
      fail(Errc::validation, "unknown interaction type '" + type + "'");
    }
  }
  return needs;
}

Json step_to_json(const StepSpec& spec) {
  Json j;
  j["op"] = std::string(step_name(spec));
  Json params = Json::object();
  std::visit(overloaded{
                 [&](const step::Filter& s) {
                   params["size"] = s.kernel.size();
                   params["weights"] = std::vector<double>(s.kernel.weights().begin(),
                                                           s.kernel.weights().end());
                 },
                 [&](const step::HardenMask& s) { params["threshold"] = s.threshold; },
                 [&](const step::ApplyMask& s) {
                   params["color"] = {s.color.r, s.color.g, s.color.b};
                   params["opacity"] = s.opacity;
                 },
                 [&](const step::Crop& s) {
                   if (s.rect) params["rect"] = {s.rect->x, s.rect->y, s.rect->w, s.rect->h};
                 },
                 [&](const step::HttpInfer& s) {
                   params["url"] = s.url;
                   params["response"] = s.response == step::InferResponse::image ? "image" : "mask";
                   if (s.timeout) params["timeout"] = s.timeout->count();
                   params["content_type"] = s.content_type;
                   params["threshold"] = s.threshold;
                 },
                 [](const auto&) {},
             },
             spec);
  if (!params.empty()) j["params"] = std::move(params);
  return j;
}

}  // namespace

std::string_view to_string(Category category) noexcept {
  for (const auto& [c, name] : kCategoryNames) {
    if (c == category) return name;
  }
  return "unknown";
}

std::optional<Category> parse_category(std::string_view text) noexcept {
  for (const auto& [c, name] : kCategoryNames) {
    if (name == text) return c;
  }
  return std::nullopt;
}

std::string_view step_name(const StepSpec& step) noexcept {
  return std::visit(overloaded{
                        [](const step::Filter&) { return std::string_view("filter"); },
                        [](const step::RgbaToGrayscale&) { return std::string_view("rgba_to_grayscale"); },
                        [](const step::GrayscaleToRgba&) { return std::string_view("grayscale_to_rgba"); },
                        [](const step::HardenMask&) { return std::string_view("harden_mask"); },
                        [](const step::ApplyMask&) { return std::string_view("apply_mask"); },
                        [](const step::ComputeHistogram&) { return std::string_view("compute_histogram"); },
                        [](const step::Crop&) { return std::string_view("crop"); },
                        [](const step::HttpInfer&) { return std::string_view("http_infer"); },
                        [](const step::Invert&) { return std::string_view("invert"); },
                    },
                    step);
}

PluginManifest load_manifest(std::string_view json_text) {
  const Json j = detail::parse_json(json_text, "manifest");
  require_object(j, "manifest");
  reject_unknown_fields(j, {"id", "name", "category", "description", "pipeline", "interactions"},
                        "manifest");

  PluginManifest m;
  m.id = require_string(j, "id", "manifest");
  if (m.id.empty()) fail(Errc::validation, "manifest id must not be empty");
  m.name = require_string(j, "name", "manifest");
  const std::string category = require_string(j, "category", "manifest");
  auto parsed = parse_category(category);
  if (!parsed) {
    fail(Errc::validation, "unknown category '" + category +
                               "' (expected data-visualization, filters, llms, or machine-learning)");
  }
  m.category = *parsed;
  if (j.contains("description")) m.description = require_string(j, "description", "manifest");

  const Json& pipeline = require_field(j, "pipeline", "manifest");
  if (!pipeline.is_array()) fail(Errc::validation, "'pipeline' must be an array");
  if (pipeline.empty()) fail(Errc::validation, "manifest pipeline must not be empty");
  for (std::size_t i = 0; i < pipeline.size(); ++i) m.pipeline.push_back(parse_step(pipeline[i], i));

  if (j.contains("interactions")) m.interactions = parse_interactions(j.at("interactions"));

  for (const auto& s : m.pipeline) {
    if (const auto* c = std::get_if<step::Crop>(&s); c && !c->rect && !m.interactions.box) {
      fail(Errc::validation, "crop without a rect needs a declared box interaction");
    }
  }
  return m;
}

PluginManifest load_manifest_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return load_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string manifest_to_json(const PluginManifest& manifest) {
  Json j;
  j["id"] = manifest.id;
  j["name"] = manifest.name;
  j["category"] = std::string(to_string(manifest.category));
  j["description"] = manifest.description;
  Json pipeline = Json::array();
  for (const auto& s : manifest.pipeline) pipeline.push_back(step_to_json(s));
  j["pipeline"] = std::move(pipeline);
  Json interactions = Json::array();
  if (manifest.interactions.box) interactions.push_back({{"type", "box"}});
  if (manifest.interactions.seeds > 0) {
    interactions.push_back({{"type", "seeds"}, {"count", manifest.interactions.seeds}});
  }
  j["interactions"] = std::move(interactions);
  return j.dump(2);
}

}  // namespace boostlet
