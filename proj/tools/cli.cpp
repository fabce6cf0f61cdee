#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "boostlet/catalog.hpp"
#include "boostlet/error.hpp"
#include "boostlet/harness.hpp"
#include "boostlet/hosts.hpp"
#include "boostlet/png.hpp"
#include "boostlet/runtime.hpp"

namespace boostlet::cli {
namespace {

struct RunOptions {
  std::vector<std::string> inputs;
  std::string plugin;
  std::string output;
  std::vector<std::string> boxes;
  std::vector<std::string> seeds;
  std::optional<std::size_t> surface;
  std::string report;
  std::string histogram;
  std::string manifests;
};

struct TestOptions {
  std::string suite;
  std::string json;
  unsigned jobs = 0;
};

struct ListOptions {
  std::string category;
  std::string search;
  std::string manifests;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

/// Built-ins plus every `*.json` manifest in `dir`.
Catalog load_catalog(const std::string& dir) {
  Catalog catalog = Catalog::with_builtins();
  if (dir.empty()) return catalog;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    fail(Errc::configuration, "manifest directory " + dir + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) catalog.add(load_manifest_file(f));
  return catalog;
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  ScriptedSource source;
  Catalog catalog = Catalog::with_builtins();
  PluginManifest manifest;
  Environment env;
  try {
    for (const auto& b : opt.boxes) source.push_box(parse_rect(b));
    for (const auto& s : opt.seeds) source.push_seed(parse_seed(s));
    catalog = load_catalog(opt.manifests);
    manifest = resolve_plugin(opt.plugin, catalog);
    for (const auto& in : opt.inputs) {
      if (!std::filesystem::is_regular_file(in)) fail(Errc::configuration, "no such input " + in);
      env.files.emplace_back(in);
    }
  } catch (const Error& e) {
    err << "boostlet run: " << e.what() << '\n';
    return kUsage;
  }
  env.markers.insert(std::string(kFileHostMarker));
  env.commit_path = opt.output;
  env.surface_override = opt.surface;

  std::unique_ptr<Host> host;
  try {
    host = AdapterRegistry::with_defaults().detect(env);
  } catch (const Error& e) {
    err << "boostlet run: " << e.what() << '\n';
    return kUsage;
  }

  Session session(*host, source, [&err](const HintRecord& h) {
    err << "hint: " << h.message << " (" << h.duration.count() << " s)\n";
  });
  const RunReport report = run_plugin(manifest, session);

  try {
    if (!opt.report.empty()) write_text(opt.report, to_json(report) + "\n");
    if (report.committed() && report.histogram) {
      std::filesystem::path sidecar = opt.histogram;
      if (sidecar.empty()) {
        sidecar = std::filesystem::path(opt.output);
        sidecar.replace_extension(".histogram.json");
      }
      write_text(sidecar, histogram_to_json(*report.histogram) + "\n");
    }
  } catch (const Error& e) {
    err << "boostlet run: " << e.what() << '\n';
    return kFailed;
  }

  if (!report.committed()) {
    err << "boostlet run: " << manifest.id << " " << to_string(report.outcome) << ": "
        << report.reason << '\n';
    return kFailed;
  }
  out << manifest.id << " committed (" << to_string(report.commit) << ") -> " << opt.output
      << '\n';
  return kOk;
}

int cmd_test(const TestOptions& opt, std::ostream& out, std::ostream& err) {
  SuiteReport report;
  try {
    report = run_suite(opt.suite, Catalog::with_builtins(), opt.jobs);
  } catch (const Error& e) {
    err << "boostlet test: " << e.what() << '\n';
    return kUsage;
  }
  for (const auto& c : report.cases) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (c.diff) out << "  fraction=" << c.diff->fraction;
    if (!c.passed) out << "  (" << c.reason << ")";
    out << '\n';
  }
  out << report.passed() << "/" << report.cases.size() << " case(s) passed\n";
  if (!opt.json.empty()) {
    try {
      write_text(opt.json, to_json(report) + "\n");
    } catch (const Error& e) {
      err << "boostlet test: " << e.what() << '\n';
      return kUsage;
    }
  }
  return report.exit_code();
}

int cmd_list(const ListOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<Category> category;
  if (!opt.category.empty()) {
    category = parse_category(opt.category);
    if (!category) {
      err << "boostlet list: unknown category '" << opt.category << "'\n";
      return kUsage;
    }
  }
  Catalog catalog;
  try {
    catalog = load_catalog(opt.manifests);
  } catch (const Error& e) {
    err << "boostlet list: " << e.what() << '\n';
    return kUsage;
  }
  for (const auto& m : catalog.list(opt.search, category)) {
    out << m.id << '\t' << to_string(m.category) << '\t' << m.name << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Headless image-processing plugin engine"};
  app.name("boostlet");
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Run a plugin against PNG files");
  run_cmd->add_option("--input", run_opt.inputs, "Input PNG; repeat to offer several surfaces")
      ->required();
  run_cmd->add_option("--plugin", run_opt.plugin, "Manifest path or built-in plugin id")
      ->required();
  run_cmd->add_option("--output", run_opt.output, "Where the committed image is written")
      ->required();
  run_cmd->add_option("--box", run_opt.boxes, "Scripted box answer x,y,w,h (repeatable)");
  run_cmd->add_option("--seed", run_opt.seeds, "Scripted seed answer x,y (repeatable)");
  run_cmd->add_option("--surface", run_opt.surface, "Force this input index instead of the largest");
  run_cmd->add_option("--report", run_opt.report, "Write the run report as JSON");
  run_cmd->add_option("--histogram", run_opt.histogram,
                      "Histogram sidecar path (default: output with a .histogram.json extension)");
  run_cmd->add_option("--manifests", run_opt.manifests, "Directory of extra manifest files");

  TestOptions test_opt;
  auto* test_cmd = app.add_subcommand("test", "Run a regression suite of *.case.json files");
  test_cmd->add_option("--suite", test_opt.suite, "Suite directory")->required();
  test_cmd->add_option("--json", test_opt.json, "Write the suite report as JSON");
  test_cmd->add_option("--jobs", test_opt.jobs, "Parallel cases (0 = all cores)");

  ListOptions list_opt;
  auto* list_cmd = app.add_subcommand("list", "List available plugins");
  list_cmd->add_option("--category", list_opt.category,
                       "data-visualization, filters, llms, or machine-learning");
  list_cmd->add_option("--search", list_opt.search, "Case-insensitive name/description filter");
  list_cmd->add_option("--manifests", list_opt.manifests, "Directory of extra manifest files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opt, out, err);
    if (*test_cmd) return cmd_test(test_opt, out, err);
    return cmd_list(list_opt, out, err);
  } catch (const std::exception& e) {
    err << "boostlet: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace boostlet::cli
