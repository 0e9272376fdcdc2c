// Copyright 2026 The vscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// vscreen: validity screen and selective-prediction criterion for
// item-level confidence logs.
//
//   vscreen screen    --input data.csv [--config cfg.json] [--format md|csv|json] [--out DIR]
//   vscreen selective --input data.csv ...
//   vscreen stats     --input data.csv | --summary table.csv [--bootstrap-n N] ...
//   vscreen splithalf --input data.csv [--splits N] ...
//   vscreen synth     --config profiles.json [--seed S] [--out data.csv]

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vscreen/analysis.hpp"
#include "vscreen/dataset_io.hpp"
#include "vscreen/parallel.hpp"
#include "vscreen/report.hpp"
#include "vscreen/splithalf.hpp"
#include "vscreen/synthetic.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace vscreen;

struct CommonOptions {
  std::string input;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string format = "md";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool input_required = true) {
  auto* in = cmd->add_option("--input", o.input, "Item-level CSV");
  if (input_required) in->required();
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--seed", o.seed, "Seed (overrides the config)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"md", "csv", "json"}));
  cmd->add_option("--out", o.out, "Directory for report artifacts");
}

ToolConfig resolve_config(const CommonOptions& o) {
  ToolConfig cfg = o.config.empty() ? ToolConfig{} : load_tool_config(o.config);
  if (o.seed) cfg.screen.seed = *o.seed;
  return cfg;
}

std::vector<ModelDataset> load_models(const CommonOptions& o, const ToolConfig& cfg) {
  auto models = load_dataset(o.input, cfg.tracks);
  if (models.empty()) throw Error(fmt::format("'{}' contains no rows", o.input));
  return models;
}

json defaults_of(const ToolConfig& cfg) {
  json d = to_json(cfg.screen);
  d["tracks"] = cfg.tracks;
  d["track_names"] = cfg.track_names;
  return d;
}

// Writes artifacts into `dir` and a manifest.json that lists them.
class ArtifactWriter {
 public:
  ArtifactWriter(std::string dir, json manifest) : dir_(std::move(dir)), manifest_(std::move(manifest)) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  void Write(const std::string& name, const std::string& content) {
    if (dir_.empty()) return;
    std::ofstream f(fs::path(dir_) / name, std::ios::binary);
    if (!f) throw Error(fmt::format("cannot write '{}'", (fs::path(dir_) / name).string()));
    f << content;
    files_.push_back(name);
  }

  void Finish() {
    if (dir_.empty()) return;
    json m = manifest_;
    m["artifacts"] = files_;
    std::ofstream f(fs::path(dir_) / "manifest.json", std::ios::binary);
    f << m.dump(2) << "\n";
  }

 private:
  std::string dir_;
  json manifest_;
  std::vector<std::string> files_;
};

std::string ext(Format f) {
  switch (f) {
    case Format::kMarkdown:
      return "md";
    case Format::kCsv:
      return "csv";
    case Format::kJson:
      return "json";
  }
  return "md";
}

int run_screen(const CommonOptions& o) {
  const auto cfg = resolve_config(o);
  const auto models = analyze_cohort(load_models(o, cfg), cfg.screen);
  const auto manifest = to_json(make_manifest("screen", o.input, o.config, cfg.screen.seed, defaults_of(cfg)));
  json doc{{"manifest", manifest}, {"models", json::array()}};
  for (const auto& m : models) {
    doc["models"].push_back({{"model", m.model_id},
                             {"family", m.family},
                             {"n", m.n},
                             {"indices", to_json(*m.indices)},
                             {"tier", to_json(m.tier)}});
  }
  const Format format = parse_format(o.format);
  const std::string primary = format == Format::kJson ? doc.dump(2) + "\n" : render_vrs_table(models, format);
  std::cout << primary;
  ArtifactWriter w(o.out, manifest);
  w.Write("vrs.md", render_vrs_table(models, Format::kMarkdown));
  w.Write("vrs.csv", render_vrs_table(models, Format::kCsv));
  w.Write("screen.json", doc.dump(2) + "\n");
  w.Finish();
  return 0;
}

int run_selective(const CommonOptions& o) {
  const auto cfg = resolve_config(o);
  const auto models = analyze_cohort(load_models(o, cfg), cfg.screen);
  const auto manifest =
      to_json(make_manifest("selective", o.input, o.config, cfg.screen.seed, defaults_of(cfg)));
  json doc{{"manifest", manifest}, {"models", json::array()}};
  for (auto i : report_order(models)) doc["models"].push_back(to_json(models[i]));
  const Format format = parse_format(o.format);
  std::cout << (format == Format::kJson ? doc.dump(2) + "\n" : render_selective_table(models, format));
  ArtifactWriter w(o.out, manifest);
  w.Write("selective_table.md", render_selective_table(models, Format::kMarkdown));
  w.Write("selective_table.csv", render_selective_table(models, Format::kCsv));
  w.Write("track_table.md", render_track_table(models, cfg.tracks, cfg.track_names, Format::kMarkdown));
  w.Write("track_table.csv", render_track_table(models, cfg.tracks, cfg.track_names, Format::kCsv));
  w.Write("auroc_by_tier.csv", figure_auroc_csv(models));
  w.Write("gain70_by_tier.csv", figure_gain70_csv(models));
  w.Write("risk_coverage.csv", figure_risk_coverage_csv(models));
  w.Write("l_vs_auroc.csv", figure_l_auroc_csv(models));
  w.Write("selective.json", doc.dump(2) + "\n");
  w.Finish();
  return 0;
}

int run_stats(const CommonOptions& o, const std::string& summary, std::int64_t bootstrap_n) {
  if (o.input.empty() == summary.empty()) throw Error("stats needs exactly one of --input or --summary");
  if (bootstrap_n < 1000) throw Error("--bootstrap-n must be at least 1000");
  const auto cfg = resolve_config(o);
  const auto models = summary.empty() ? analyze_cohort(load_models(o, cfg), cfg.screen)
                                      : load_summary_csv(summary);
  auto defaults = defaults_of(cfg);
  defaults["bootstrap_n"] = bootstrap_n;
  const auto manifest = to_json(make_manifest("stats", summary.empty() ? o.input : summary, o.config,
                                              cfg.screen.seed, defaults));
  json doc = criterion_report(models, bootstrap_n, cfg.screen.seed);
  doc["manifest"] = manifest;
  const Format format = parse_format(o.format);
  std::cout << (format == Format::kMarkdown ? render_stats_markdown(doc) : doc.dump(2) + "\n");
  ArtifactWriter w(o.out, manifest);
  w.Write("stats.json", doc.dump(2) + "\n");
  w.Write("stats.md", render_stats_markdown(doc));
  w.Finish();
  return 0;
}

int run_splithalf(const CommonOptions& o, std::int64_t splits) {
  if (splits < 1) throw Error("--splits must be at least 1");
  const auto cfg = resolve_config(o);
  const auto datasets = load_models(o, cfg);
  auto defaults = defaults_of(cfg);
  defaults["splits"] = splits;
  const auto manifest = to_json(make_manifest("splithalf", o.input, o.config, cfg.screen.seed, defaults));
  const auto result = split_half_cv(datasets, cfg.screen, splits, cfg.screen.seed);
  json doc = to_json(result);
  doc["manifest"] = manifest;
  const Format format = parse_format(o.format);
  if (format == Format::kJson) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << fmt::format(
        "median d = {:.3f}, 95% CI [{:.3f}, {:.3f}], P(d > 0) = {:.3f}, splits retained {}/{}\n",
        result.median_d, result.d_ci.lower, result.d_ci.upper, result.p_d_positive,
        result.n_splits_retained, result.n_splits_requested);
  }
  ArtifactWriter w(o.out, manifest);
  w.Write("splithalf.json", doc.dump(2) + "\n");
  w.Finish();
  return 0;
}

BehaviourProfile profile_from_json(const json& j) {
  BehaviourProfile p;
  p.kind = parse_behaviour_kind(j.at("kind").get<std::string>());
  p.accuracy = j.value("accuracy", p.accuracy);
  p.p_keep_given_correct = j.value("p_keep_given_correct", p.p_keep_given_correct);
  p.p_keep_given_incorrect = j.value("p_keep_given_incorrect", p.p_keep_given_incorrect);
  p.p_bet_given_keep = j.value("p_bet_given_keep", p.p_bet_given_keep);
  p.p_bet_given_withdraw = j.value("p_bet_given_withdraw", p.p_bet_given_withdraw);
  p.n_items = j.value("n_items", p.n_items);
  p.tracks = j.value("tracks", p.tracks);
  p.Validate();
  return p;
}

int run_synth(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out) {
  std::ifstream in(config);
  if (!in) throw Error(fmt::format("cannot open '{}'", config));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(fmt::format("profile config: {}", e.what()));
  }
  const std::uint64_t s = seed.value_or(j.value("seed", std::uint64_t{0}));
  std::vector<ModelDataset> datasets;
  try {
    for (const auto& m : j.at("models")) {
      datasets.push_back(generate_model(profile_from_json(m), m.at("model").get<std::string>(),
                                        m.value("family", std::string("synthetic")), s));
    }
  } catch (const json::exception& e) {
    throw Error(fmt::format("profile config: {}", e.what()));
  }
  for (const auto& d : datasets) {
    if (!is_valid_identifier(d.model_id) || !is_valid_identifier(d.family)) {
      throw Error(fmt::format("invalid identifier in profile '{}'", d.model_id));
    }
  }
  const std::string csv = serialize_dataset(datasets);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error(fmt::format("cannot write '{}'", out));
    f << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Validity screen and selective-prediction criterion for LLM confidence logs"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");

  CommonOptions screen_opts, selective_opts, stats_opts, split_opts;
  auto* screen = app.add_subcommand("screen", "VRS table: validity indices and tiers");
  add_common(screen, screen_opts);
  auto* selective = app.add_subcommand("selective", "AUROC, selective gain and risk-coverage curves");
  add_common(selective, selective_opts);
  auto* stats = app.add_subcommand("stats", "Criterion-validation statistics");
  add_common(stats, stats_opts, false);
  std::string summary;
  std::int64_t bootstrap_n = 10'000;
  stats->add_option("--summary", summary, "Model-level CSV instead of item-level input");
  stats->add_option("--bootstrap-n", bootstrap_n, "Bootstrap resamples");
  auto* split = app.add_subcommand("splithalf", "Split-half cross-validation");
  add_common(split, split_opts);
  std::int64_t splits = 1000;
  split->add_option("--splits", splits, "Number of random 50/50 item splits");
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset from behaviour profiles");
  std::string synth_config, synth_out;
  std::optional<std::uint64_t> synth_seed;
  synth->add_option("--config", synth_config, "JSON profile file")->required();
  synth->add_option("--seed", synth_seed, "Seed (overrides the profile file)");
  synth->add_option("--out", synth_out, "Output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  set_threads(threads);

  try {
    if (*screen) return run_screen(screen_opts);
    if (*selective) return run_selective(selective_opts);
    if (*stats) return run_stats(stats_opts, summary, bootstrap_n);
    if (*split) return run_splithalf(split_opts, splits);
    if (*synth) return run_synth(synth_config, synth_seed, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "vscreen: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
