#include "boostlet/runtime.hpp"

#include <chrono>

#include "boostlet/http.hpp"
#include "boostlet/png.hpp"
#include "json_util.hpp"

namespace boostlet {
namespace {

using detail::Json;

inline constexpr Rgb kMaskCommitColor{255, 0, 0};
inline constexpr double kMaskCommitOpacity = 0.5;
inline constexpr Seconds kPromptHint{3.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

enum class Product { image, mask, histogram };

Mask crop_mask(const Mask& mask, const Rect& roi) {
  auto data = mask.data();
  PixelBuffer as_gray(mask.width(), mask.height(), 1, {data.begin(), data.end()});
  return mask_from_gray(crop(as_gray, roi));
}

// Everything a pipeline threads from step to step. Nothing here touches the
// host; `commit` is the only writer.
class Pipeline {
 public:
  Pipeline(Session& session, PixelBuffer acquired)
      : session_(session), acquired_(std::move(acquired)), image_(acquired_) {}

  void acquire_interactions(const InteractionNeeds& needs) {
    const SurfaceInfo bounds = session_.host().surface();
    if (needs.box) {
      session_.hint("Draw a box around the region of interest", kPromptHint);
      box_ = request_box(session_.interactions(), bounds, session_.stop_token());
    }
    if (needs.seeds > 0) {
      session_.hint("Select " + std::to_string(needs.seeds) + " seed point(s)", kPromptHint);
      seeds_ = request_seeds(session_.interactions(), needs.seeds, bounds, session_.stop_token());
    }
  }

  void run(const StepSpec& spec) {
    std::visit(overloaded{
                   [&](const step::Filter& s) { set_image(filter(image_, s.kernel)); },
                   [&](const step::RgbaToGrayscale&) { set_image(rgba_to_grayscale(image_)); },
                   [&](const step::GrayscaleToRgba&) { set_image(grayscale_to_rgba(image_)); },
                   [&](const step::Invert&) { set_image(invert(image_)); },
                   [&](const step::HardenMask& s) {
                     if (image_.channels() != 1) {
                       fail(Errc::validation,
                            "harden_mask needs a grayscale working buffer (add rgba_to_grayscale)");
                     }
                     mask_ = harden_mask(mask_from_gray(image_), s.threshold);
                     product_ = Product::mask;
                   },
                   [&](const step::ApplyMask& s) {
                     if (!mask_) fail(Errc::validation, "apply_mask has no mask to apply");
                     set_image(apply_mask(base(), *mask_, s.color, s.opacity));
                     mask_.reset();
                   },
                   [&](const step::ComputeHistogram&) {
                     histogram_ = compute_histogram(image_);
                     product_ = Product::histogram;
                   },
                   [&](const step::Crop& s) { run_crop(s); },
                   [&](const step::HttpInfer& s) { run_http(s); },
               },
               spec);
  }

  CommitKind commit() {
    Host& host = session_.host();
    switch (product_) {
      case Product::histogram:
        host.set_image(acquired_);
        return CommitKind::passthrough;
      case Product::mask: {
        Mask full = roi_ ? Mask(acquired_.width(), acquired_.height()) : *mask_;
        if (roi_) paste(full, *mask_, *roi_);
        host.set_mask(full, kMaskCommitColor, kMaskCommitOpacity);
        return CommitKind::mask;
      }
      case Product::image:
        break;
    }
    if (!roi_) {
      host.set_image(image_);
      return CommitKind::image;
    }
    if (image_.width() != roi_->w || image_.height() != roi_->h) {
      fail(Errc::commit, "processed region no longer matches the cropped ROI");
    }
    PixelBuffer full = acquired_;
    const PixelBuffer patch = image_.channels() == 4 ? image_ : grayscale_to_rgba(image_);
    for (int y = 0; y < roi_->h; ++y) {
      for (int x = 0; x < roi_->w; ++x) {
        for (int c = 0; c < 4; ++c) full.at(roi_->x + x, roi_->y + y, c) = patch.at(x, y, c);
      }
    }
    host.set_image(full);
    return CommitKind::image;
  }

  const std::optional<Histogram>& histogram() const { return histogram_; }

 private:
  void set_image(PixelBuffer next) {
    image_ = std::move(next);
    product_ = Product::image;
  }

  PixelBuffer base() const { return roi_ ? crop(acquired_, *roi_) : acquired_; }

  static void paste(Mask& full, const Mask& part, const Rect& roi) {
    auto dst = full.data();
    for (int y = 0; y < roi.h; ++y) {
      for (int x = 0; x < roi.w; ++x) {
        dst[static_cast<std::size_t>(roi.y + y) * static_cast<std::size_t>(full.width()) +
            static_cast<std::size_t>(roi.x + x)] = part.at(x, y);
      }
    }
  }

  void run_crop(const step::Crop& s) {
    if (!s.rect && !box_) fail(Errc::validation, "crop needs a rect or a selected box");
    const Rect roi = s.rect ? *s.rect : *box_;
    image_ = crop(image_, roi);
    if (mask_) mask_ = crop_mask(*mask_, roi);
    roi_ = roi_ ? Rect{roi_->x + roi.x, roi_->y + roi.y, roi.w, roi.h} : roi;
    if (product_ == Product::histogram) product_ = Product::image;
  }

  void run_http(const step::HttpInfer& s) {
    const Seconds timeout = s.timeout.value_or(default_http_timeout());
    HttpHeaders headers;
    if (box_) {
      headers.emplace_back("X-Boostlet-Box", std::to_string(box_->x) + "," +
                                                 std::to_string(box_->y) + "," +
                                                 std::to_string(box_->w) + "," +
                                                 std::to_string(box_->h));
    }
    if (!seeds_.empty()) {
      std::string value;
      for (const auto& p : seeds_) {
        if (!value.empty()) value += ';';
        value += std::to_string(p.x) + "," + std::to_string(p.y);
      }
      headers.emplace_back("X-Boostlet-Seeds", value);
    }

    session_.hint("Waiting for " + parse_url(s.url).host, timeout);
    const EncodedImage request = encode_png(image_);
    const HttpExchange exchange = send_http_post(s.url, request.bytes, s.content_type, timeout,
                                                 headers, session_.stop_token());

    if (s.response == step::InferResponse::image) {
      PixelBuffer reply = decode_png(exchange.response_body);
      if (reply.width() != image_.width() || reply.height() != image_.height()) {
        fail(Errc::validation, "remote returned a " + std::to_string(reply.width()) + "x" +
                                   std::to_string(reply.height()) + " image for a " +
                                   std::to_string(image_.width()) + "x" +
                                   std::to_string(image_.height()) + " request");
      }
      set_image(std::move(reply));
      return;
    }

    const auto& body = exchange.response_body;
    Mask raw(image_.width(), image_.height());
    if (EncodedImage{body}.has_png_signature()) {
      PixelBuffer reply = decode_png(body);
      if (reply.channels() == 4) reply = rgba_to_grayscale(reply);
      if (reply.width() != image_.width() || reply.height() != image_.height()) {
        fail(Errc::validation, "remote mask does not match the request dimensions");
      }
      raw = mask_from_gray(reply);
    } else if (body.size() == image_.pixel_count()) {
      raw = Mask(image_.width(), image_.height(), body);
    } else {
      fail(Errc::validation, "remote mask is neither a PNG nor " +
                                 std::to_string(image_.pixel_count()) + " raw bytes");
    }
    mask_ = harden_mask(raw, s.threshold);
    product_ = Product::mask;
  }

  Session& session_;
  PixelBuffer acquired_;
  PixelBuffer image_;
  std::optional<Mask> mask_;
  std::optional<Histogram> histogram_;
  std::optional<Rect> roi_;
  std::optional<Rect> box_;
  std::vector<SeedPoint> seeds_;
  Product product_ = Product::image;
};

Json hint_json(const HintRecord& h) {
  return {{"message", h.message}, {"duration_s", h.duration.count()}};
}

}  // namespace

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::committed: return "committed";
    case Outcome::cancelled: return "cancelled";
    case Outcome::failed: return "failed";
  }
  return "unknown";
}

std::string_view to_string(CommitKind kind) noexcept {
  switch (kind) {
    case CommitKind::none: return "none";
    case CommitKind::image: return "image";
    case CommitKind::mask: return "mask";
    case CommitKind::passthrough: return "passthrough";
  }
  return "unknown";
}

Session::Session(Host& host, InteractionSource& interactions, HintSink sink)
    : host_(host), interactions_(interactions), sink_(std::move(sink)) {}

void Session::hint(std::string message, Seconds duration) {
  hints_.push_back({std::move(message), duration});
  if (sink_) sink_(hints_.back());
}

RunReport run_plugin(const PluginManifest& manifest, Session& session) {
  using Clock = std::chrono::steady_clock;
  RunReport report;
  report.plugin_id = manifest.id;
  report.host = std::string(session.host().adapter_name());
  const std::size_t hints_before = session.hints().size();

  auto timed = [&](std::string op, auto&& fn) {
    const auto start = Clock::now();
    fn();
    report.steps.push_back(
        {std::move(op), std::chrono::duration<double, std::milli>(Clock::now() - start).count()});
  };

  try {
    std::optional<Pipeline> pipeline;
    timed("acquire", [&] { pipeline.emplace(session, session.host().get_image()); });
    if (manifest.interactions.any()) {
      timed("interact", [&] { pipeline->acquire_interactions(manifest.interactions); });
    }
    for (const auto& spec : manifest.pipeline) {
      timed(std::string(step_name(spec)), [&] { pipeline->run(spec); });
    }
    timed("commit", [&] { report.commit = pipeline->commit(); });
    report.histogram = pipeline->histogram();
    report.outcome = Outcome::committed;
  } catch (const Error& e) {
    report.error = e.code();
    report.reason = e.what();
    report.outcome = e.code() == Errc::cancelled ? Outcome::cancelled : Outcome::failed;
  } catch (const std::exception& e) {
    report.reason = e.what();
    report.outcome = Outcome::failed;
  }

  const auto& hints = session.hints();
  report.hints.assign(hints.begin() + static_cast<std::ptrdiff_t>(hints_before), hints.end());
  return report;
}

RunReport run_plugin(const PluginManifest& manifest, Host& host, InteractionSource& interactions) {
  Session session(host, interactions);
  return run_plugin(manifest, session);
}

std::string histogram_to_json(const Histogram& histogram) {
  return Json(histogram).dump();
}

std::string to_json(const RunReport& report, JsonStyle style) {
  Json j;
  j["plugin"] = report.plugin_id;
  j["host"] = report.host;
  j["outcome"] = std::string(to_string(report.outcome));
  j["commit"] = std::string(to_string(report.commit));
  j["error"] = report.error ? Json(std::string(to_string(*report.error))) : Json(nullptr);
  j["reason"] = report.reason;
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    Json step{{"op", s.op}};
    if (style.timings) step["millis"] = s.millis;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  Json hints = Json::array();
  for (const auto& h : report.hints) hints.push_back(hint_json(h));
  j["hints"] = std::move(hints);
  j["histogram"] = report.histogram ? Json(*report.histogram) : Json(nullptr);
  return j.dump(style.indent);
}

}  // namespace boostlet
