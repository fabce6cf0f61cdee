#pragma once

#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "boostlet/error.hpp"
#include "boostlet/host.hpp"
#include "boostlet/interaction.hpp"
#include "boostlet/manifest.hpp"

namespace boostlet {

struct HintRecord {
  std::string message;
  Seconds duration{};
  friend bool operator==(const HintRecord&, const HintRecord&) = default;
};

struct StepTiming {
  std::string op;
  double millis = 0.0;
};

enum class Outcome { committed, cancelled, failed };
/// What the commit wrote: pixels, a mask overlay, or the acquired pixels
/// back unchanged after a histogram (data-only) run.
enum class CommitKind { none, image, mask, passthrough };

std::string_view to_string(Outcome outcome) noexcept;
std::string_view to_string(CommitKind kind) noexcept;

struct RunReport {
  std::string plugin_id;
  std::string host;
  std::vector<StepTiming> steps;
  std::vector<HintRecord> hints;
  Outcome outcome = Outcome::failed;
  CommitKind commit = CommitKind::none;
  std::optional<Errc> error;
  std::string reason;
  std::optional<Histogram> histogram;

  bool committed() const noexcept { return outcome == Outcome::committed; }
};

struct JsonStyle {
  bool timings = true;
  int indent = 2;
};

std::string to_json(const RunReport& report, JsonStyle style = {});
/// The 256-bin sidecar: a bare JSON array of integers.
std::string histogram_to_json(const Histogram& histogram);

/// One plugin run against one host. Owns the hint log and the stop source
/// used to cancel pending interactions and HTTP exchanges.
class Session {
 public:
  using HintSink = std::function<void(const HintRecord&)>;

  Session(Host& host, InteractionSource& interactions, HintSink sink = {});

  Host& host() noexcept { return host_; }
  InteractionSource& interactions() noexcept { return interactions_; }

  /// Records a transient user notification and forwards it to the sink.
  void hint(std::string message, Seconds duration);
  const std::vector<HintRecord>& hints() const noexcept { return hints_; }

  std::stop_token stop_token() const noexcept { return stop_.get_token(); }
  void request_stop() noexcept { stop_.request_stop(); }

 private:
  Host& host_;
  InteractionSource& interactions_;
  HintSink sink_;
  std::vector<HintRecord> hints_;
  std::stop_source stop_;
};

/// acquire -> declared interactions -> steps -> commit. The commit is the
/// only host mutation, so any failure or cancellation leaves the host as it
/// was. Never throws for plugin-level failures; they land in the report.
RunReport run_plugin(const PluginManifest& manifest, Session& session);
RunReport run_plugin(const PluginManifest& manifest, Host& host, InteractionSource& interactions);

}  // namespace boostlet
