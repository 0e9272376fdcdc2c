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

// Per-model pipeline (screen + criterion metrics) and the cohort-level
// criterion-validation statistics built on top of it.

#ifndef VSCREEN_ANALYSIS_HPP_
#define VSCREEN_ANALYSIS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vscreen/core.hpp"
#include "vscreen/parallel.hpp"
#include "vscreen/screen.hpp"
#include "vscreen/selective.hpp"

namespace vscreen {

/// Everything a config file may carry: the screen settings under their own
/// field names plus the declared track set and optional display names.
struct ToolConfig {
  ScreenConfig screen;
  std::vector<std::string> tracks = default_tracks();
  std::map<std::string, std::string> track_names;
};

/// Unknown keys are rejected so that typos do not silently fall back to
/// defaults.
ToolConfig tool_config_from_json(const nlohmann::json& j);
ToolConfig load_tool_config(const std::string& path);

nlohmann::json to_json(const ScreenConfig& config);

/// Model-level view used by every report. Fields are optional because a
/// summary loaded from a keyed-in table carries only some of them.
struct ModelSummary {
  std::string model_id;
  std::string family;
  std::int64_t n = 0;
  std::optional<ValidityIndices> indices;
  Tier tier;
  std::optional<double> baseline;
  std::optional<double> auroc;
  std::map<double, double> gains;
  std::optional<RiskCoverageCurve> curve;
  std::optional<PerTrackReport> per_track;
  // Keyed-in values used when `indices` is absent.
  std::optional<double> summary_L;
  std::optional<double> summary_r;

  std::optional<double> gain(double coverage) const;
  std::optional<double> keep_rate() const;
  std::optional<double> phi() const;
};

ModelSummary analyze_model(const ModelDataset& dataset, const ScreenConfig& config,
                           Execution exec = Execution::kParallel);

std::vector<ModelSummary> analyze_cohort(std::span<const ModelDataset> datasets,
                                         const ScreenConfig& config,
                                         Execution exec = Execution::kParallel);

/// Model-level CSV with header
///   model,family,tier,baseline,auroc,gain80,gain70,gain50
/// optionally followed by L,r columns. Used for model-level tables entered by hand.
std::vector<ModelSummary> parse_summary_csv(std::string_view text);
std::vector<ModelSummary> load_summary_csv(const std::string& path);

/// Tier blocks Valid, Indeterminate, Invalid; AUROC descending inside a
/// block, model id as tie-break. Models without AUROC go last in a block.
std::vector<std::size_t> report_order(std::span<const ModelSummary> models);

/// The cohort statistics report: tier ANOVA, Valid-vs-Invalid tests with
/// and without the lowest-AUROC Invalid model, bootstrap tier means,
/// monotonicity, the gain-at-70% battery, within-Valid correlations,
/// pooled per-track correlation and the family grouping. Tests that cannot
/// run are listed under "absent" with the reason.
nlohmann::json criterion_report(std::span<const ModelSummary> models, std::int64_t bootstrap_n,
                                std::uint64_t seed, Execution exec = Execution::kParallel);

}  // namespace vscreen

#endif  // VSCREEN_ANALYSIS_HPP_
