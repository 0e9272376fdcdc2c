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

// Table renderers, figure-data CSVs and JSON serialisation.
// Display precision is 3 decimals; JSON keeps full precision. Undefined
// values render as "---" in tables and null in JSON.

#ifndef VSCREEN_REPORT_HPP_
#define VSCREEN_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "vscreen/analysis.hpp"
#include "vscreen/screen.hpp"
#include "vscreen/splithalf.hpp"
#include "vscreen/stats.hpp"

namespace vscreen {

enum class Format { kMarkdown, kCsv, kJson };

Format parse_format(std::string_view text);

inline constexpr std::string_view kUndefinedMarker = "---";

/// "%.3f", with an explicit sign when `signed_value` is set; "---" if empty.
std::string format3(std::optional<double> v, bool signed_value = false);

nlohmann::json to_json(const ContingencyTable& t);
nlohmann::json to_json(const ValidityIndices& v);
nlohmann::json to_json(const Tier& t);
nlohmann::json to_json(const StatResult& s);
nlohmann::json to_json(const SplitHalfResult& s);
nlohmann::json to_json(const RiskCoverageCurve& c);
nlohmann::json to_json(const ModelSummary& m);

struct RunManifest {
  std::string command;
  std::string input_path;
  std::string config_path;
  std::uint64_t seed = 0;
  nlohmann::json defaults;  // effective configuration
  // ISO-8601 UTC rendering of SOURCE_DATE_EPOCH when set; null otherwise so reruns stay
  // byte-identical.
  std::optional<std::string> timestamp;
};

RunManifest make_manifest(std::string command, std::string input_path, std::string config_path,
                          std::uint64_t seed, nlohmann::json defaults);
nlohmann::json to_json(const RunManifest& m);

/// One row per model: model, n, L, Fp, RBS, r, r_p, TRIN, min_cell, tier,
/// reasons, warnings. Input order is preserved.
std::string render_vrs_table(std::span<const ModelSummary> models, Format format);

/// model, tier, baseline, AUROC, gain columns, in report_order().
std::string render_selective_table(std::span<const ModelSummary> models, Format format);

/// Per-track AUROC with cross-track mean and SD, in report_order().
std::string render_track_table(std::span<const ModelSummary> models,
                          const std::vector<std::string>& tracks,
                          const std::map<std::string, std::string>& track_names, Format format);

// Figure data: (model, tier, auroc), (model, tier, gain70),
// (model, coverage, accuracy), (model, L, auroc).
std::string figure_auroc_csv(std::span<const ModelSummary> models);
std::string figure_gain70_csv(std::span<const ModelSummary> models);
std::string figure_risk_coverage_csv(std::span<const ModelSummary> models);
std::string figure_l_auroc_csv(std::span<const ModelSummary> models);

std::string render_stats_markdown(const nlohmann::json& report);

}  // namespace vscreen

#endif  // VSCREEN_REPORT_HPP_
