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

#include "vscreen/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <ctime>

namespace vscreen {
namespace {

using nlohmann::json;

json opt(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// Accumulates rows and renders them as a markdown or CSV table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void AddRow(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string Render(Format format) const {
    std::string out;
    if (format == Format::kCsv) {
      out += join(header_, ",") + "\n";
      for (const auto& r : rows_) out += join(r, ",") + "\n";
      return out;
    }
    out += "| " + join(header_, " | ") + " |\n|";
    for (std::size_t i = 0; i < header_.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& r : rows_) out += "| " + join(r, " | ") + " |\n";
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string list_field(const std::vector<std::string>& items, Format format) {
  if (items.empty()) return format == Format::kCsv ? "" : "-";
  return join(items, format == Format::kCsv ? ";" : ", ");
}

std::string full(std::optional<double> v) {
  return v ? fmt::format("{}", *v) : std::string(kUndefinedMarker);
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "md") return Format::kMarkdown;
  if (text == "csv") return Format::kCsv;
  if (text == "json") return Format::kJson;
  throw Error(fmt::format("unknown format '{}'", text));
}

std::string format3(std::optional<double> v, bool signed_value) {
  if (!v) return std::string(kUndefinedMarker);
  // Avoid printing "-0.000".
  double x = *v;
  if (std::abs(x) < 0.0005) x = 0.0;
  return signed_value ? fmt::format("{:+.3f}", x) : fmt::format("{:.3f}", x);
}

json to_json(const ContingencyTable& t) {
  return json{{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d}};
}

json to_json(const ValidityIndices& v) {
  return json{{"L", v.L},
              {"Fp", opt(v.Fp)},
              {"RBS", opt(v.RBS)},
              {"r", opt(v.r)},
              {"TRIN", v.TRIN},
              {"r_p_value", opt(v.r_p_value)},
              {"rbs_ci", v.rbs_ci ? json{v.rbs_ci->lower, v.rbs_ci->upper} : json(nullptr)},
              {"min_cell", v.min_cell},
              {"n", v.n},
              {"table", to_json(v.table)}};
}

json to_json(const Tier& t) {
  return json{{"value", std::string(to_string(t.value))},
              {"reasons", t.reasons},
              {"warnings", t.warnings}};
}

json to_json(const StatResult& s) {
  return json{{"name", s.name},
              {"statistic", s.statistic},
              {"p_value", opt(s.p_value)},
              {"effect_size", opt(s.effect_size)},
              {"method", s.method},
              {"n_per_group", s.n_per_group},
              {"seed", s.seed ? json(*s.seed) : json(nullptr)}};
}

json to_json(const SplitHalfResult& s) {
  return json{{"per_split_d", s.per_split_d},
              {"median_d", s.median_d},
              {"d_ci", {s.d_ci.lower, s.d_ci.upper}},
              {"p_d_positive", s.p_d_positive},
              {"n_splits_requested", s.n_splits_requested},
              {"n_splits_retained", s.n_splits_retained}};
}

json to_json(const RiskCoverageCurve& c) {
  json points = json::array();
  for (const auto& p : c.points) points.push_back({{"coverage", p.coverage}, {"accuracy", p.accuracy}});
  return json{{"points", points}, {"rc_auc", c.rc_auc}};
}

json to_json(const ModelSummary& m) {
  json j{{"model", m.model_id},
         {"family", m.family},
         {"n", m.n},
         {"tier", to_json(m.tier)},
         {"baseline", opt(m.baseline)},
         {"auroc", opt(m.auroc)}};
  j["indices"] = m.indices ? to_json(*m.indices) : json(nullptr);
  json gains = json::object();
  for (const auto& [c, g] : m.gains) gains[fmt::format("{:.2f}", c)] = g;
  j["gains"] = gains;
  j["curve"] = m.curve ? to_json(*m.curve) : json(nullptr);
  if (m.per_track) {
    json tracks = json::object();
    for (const auto& [name, t] : m.per_track->tracks) {
      tracks[name] = {{"auroc", opt(t.auroc)},   {"r", opt(t.r)},
                      {"n", t.n},                {"n_correct", t.n_correct},
                      {"n_incorrect", t.n_incorrect}};
    }
    j["per_track"] = {{"tracks", tracks},
                      {"mean_auroc", opt(m.per_track->mean_auroc)},
                      {"sd_auroc", opt(m.per_track->sd_auroc)}};
  } else {
    j["per_track"] = nullptr;
  }
  return j;
}

RunManifest make_manifest(std::string command, std::string input_path, std::string config_path,
                          std::uint64_t seed, json defaults) {
  RunManifest m{std::move(command), std::move(input_path), std::move(config_path), seed,
                std::move(defaults), std::nullopt};
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    char* end = nullptr;
    const long long secs = std::strtoll(epoch, &end, 10);
    if (*end != '\0' || secs < 0) {
      throw Error(fmt::format("SOURCE_DATE_EPOCH '{}' is not a non-negative integer", epoch));
    }
    const auto t = static_cast<std::time_t>(secs);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    m.timestamp = buf;
  }
  return m;
}

json to_json(const RunManifest& m) {
  return json{{"tool", "vscreen"},
              {"version", VSCREEN_VERSION},
              {"command", m.command},
              {"input_path", m.input_path},
              {"config_path", m.config_path},
              {"seed", m.seed},
              {"defaults", m.defaults},
              {"timestamp", m.timestamp ? json(*m.timestamp) : json(nullptr)}};
}

std::string render_vrs_table(std::span<const ModelSummary> models, Format format) {
  if (format == Format::kJson) {
    json rows = json::array();
    for (const auto& m : models) rows.push_back(to_json(m));
    return rows.dump(2) + "\n";
  }
  Table t({"model", "n", "L", "Fp", "RBS", "r", "r_p", "TRIN", "min_cell", "tier", "reasons",
           "warnings"});
  for (const auto& m : models) {
    if (!m.indices) {
      t.AddRow({m.model_id, fmt::format("{}", m.n), format3(m.keep_rate()), "---", "---",
                format3(m.phi(), true), "---", "---", "---", std::string(to_string(m.tier.value)),
                list_field(m.tier.reasons, format), list_field(m.tier.warnings, format)});
      continue;
    }
    const auto& v = *m.indices;
    t.AddRow({m.model_id, fmt::format("{}", v.n), format3(v.L), format3(v.Fp),
              format3(v.RBS, true), format3(v.r, true), format3(v.r_p_value), format3(v.TRIN),
              fmt::format("{}", v.min_cell), std::string(to_string(m.tier.value)),
              list_field(m.tier.reasons, format), list_field(m.tier.warnings, format)});
  }
  return t.Render(format);
}

std::string render_selective_table(std::span<const ModelSummary> models, Format format) {
  const auto order = report_order(models);
  if (format == Format::kJson) {
    json rows = json::array();
    for (auto i : order) {
      const auto& m = models[i];
      rows.push_back({{"model", m.model_id},
                      {"tier", std::string(to_string(m.tier.value))},
                      {"baseline", opt(m.baseline)},
                      {"auroc", opt(m.auroc)},
                      {"gain80", opt(m.gain(0.8))},
                      {"gain70", opt(m.gain(0.7))},
                      {"gain50", opt(m.gain(0.5))}});
    }
    return rows.dump(2) + "\n";
  }
  const bool csv = format == Format::kCsv;
  Table t(csv ? std::vector<std::string>{"model", "tier", "baseline", "auroc", "gain80", "gain70",
                                         "gain50"}
              : std::vector<std::string>{"Model", "Tier", "Baseline", "AUROC", "Δ80%", "Δ70%",
                                         "Δ50%"});
  for (auto i : order) {
    const auto& m = models[i];
    t.AddRow({m.model_id, std::string(to_string(m.tier.value)), format3(m.baseline),
              format3(m.auroc), format3(m.gain(0.8), true), format3(m.gain(0.7), true),
              format3(m.gain(0.5), true)});
  }
  return t.Render(format);
}

std::string render_track_table(std::span<const ModelSummary> models,
                          const std::vector<std::string>& tracks,
                          const std::map<std::string, std::string>& track_names, Format format) {
  const auto order = report_order(models);
  auto display = [&](const std::string& track) {
    auto it = track_names.find(track);
    return it == track_names.end() ? track : it->second;
  };
  if (format == Format::kJson) {
    json rows = json::array();
    for (auto i : order) {
      const auto& m = models[i];
      json row{{"model", m.model_id}, {"tier", std::string(to_string(m.tier.value))}};
      for (const auto& tr : tracks) {
        std::optional<double> v;
        if (m.per_track) {
          if (auto it = m.per_track->tracks.find(tr); it != m.per_track->tracks.end()) v = it->second.auroc;
        }
        row["tracks"][tr] = opt(v);
      }
      row["mean"] = opt(m.per_track ? m.per_track->mean_auroc : std::nullopt);
      row["sd"] = opt(m.per_track ? m.per_track->sd_auroc : std::nullopt);
      rows.push_back(row);
    }
    return rows.dump(2) + "\n";
  }
  std::vector<std::string> header = {format == Format::kCsv ? "model" : "Model",
                                     format == Format::kCsv ? "tier" : "Tier"};
  for (const auto& tr : tracks) header.push_back(display(tr));
  header.push_back(format == Format::kCsv ? "mean" : "Mean");
  header.push_back(format == Format::kCsv ? "sd" : "SD");
  Table t(std::move(header));
  for (auto i : order) {
    const auto& m = models[i];
    std::vector<std::string> row = {m.model_id, std::string(to_string(m.tier.value))};
    for (const auto& tr : tracks) {
      std::optional<double> v;
      if (m.per_track) {
        if (auto it = m.per_track->tracks.find(tr); it != m.per_track->tracks.end()) v = it->second.auroc;
      }
      row.push_back(format3(v));
    }
    row.push_back(format3(m.per_track ? m.per_track->mean_auroc : std::nullopt));
    row.push_back(format3(m.per_track ? m.per_track->sd_auroc : std::nullopt));
    t.AddRow(std::move(row));
  }
  return t.Render(format);
}

std::string figure_auroc_csv(std::span<const ModelSummary> models) {
  std::string out = "model,tier,auroc\n";
  for (auto i : report_order(models)) {
    const auto& m = models[i];
    out += fmt::format("{},{},{}\n", m.model_id, to_string(m.tier.value), full(m.auroc));
  }
  return out;
}

std::string figure_gain70_csv(std::span<const ModelSummary> models) {
  std::string out = "model,tier,gain70\n";
  for (auto i : report_order(models)) {
    const auto& m = models[i];
    out += fmt::format("{},{},{}\n", m.model_id, to_string(m.tier.value), full(m.gain(0.7)));
  }
  return out;
}

std::string figure_risk_coverage_csv(std::span<const ModelSummary> models) {
  std::string out = "model,coverage,accuracy\n";
  for (auto i : report_order(models)) {
    const auto& m = models[i];
    if (!m.curve) continue;
    for (const auto& p : m.curve->points) {
      out += fmt::format("{},{},{}\n", m.model_id, p.coverage, p.accuracy);
    }
  }
  return out;
}

std::string figure_l_auroc_csv(std::span<const ModelSummary> models) {
  std::string out = "model,L,auroc\n";
  for (auto i : report_order(models)) {
    const auto& m = models[i];
    out += fmt::format("{},{},{}\n", m.model_id, full(m.keep_rate()), full(m.auroc));
  }
  return out;
}

std::string render_stats_markdown(const json& report) {
  std::string out = "# Criterion statistics\n\n";
  auto stat_line = [&](const std::string& label, const json& s) {
    if (s.is_null()) return;
    out += fmt::format("- {}: statistic = {:.4f}", label, s.at("statistic").get<double>());
    if (!s.at("p_value").is_null()) out += fmt::format(", p = {:.4f}", s.at("p_value").get<double>());
    if (!s.at("effect_size").is_null()) {
      out += fmt::format(", effect = {:.4f}", s.at("effect_size").get<double>());
    }
    out += fmt::format(" ({})\n", s.at("method").get<std::string>());
  };
  auto get = [&](const std::string& key) { return report.contains(key) ? report.at(key) : json(); };
  stat_line("AUROC ANOVA by tier", get("auroc_anova"));
  stat_line("AUROC Mann-Whitney U, Valid > Invalid", get("auroc_mann_whitney"));
  stat_line("AUROC Mann-Whitney U, without extreme Invalid", get("auroc_mann_whitney_without_extreme"));
  if (auto d = get("auroc_cohens_d"); !d.is_null()) {
    out += fmt::format("- Cohen's d, Valid vs Invalid: {:.3f}\n", d.at("valid_vs_invalid").get<double>());
  }
  if (auto b = get("auroc_tier_bootstrap"); !b.is_null()) {
    for (const auto& [tier, e] : b.at("tiers").items()) {
      out += fmt::format("- {} mean AUROC {:.3f}, 95% CI [{:.3f}, {:.3f}]\n", tier,
                         e.at("mean").get<double>(), e.at("ci")[0].get<double>(),
                         e.at("ci")[1].get<double>());
    }
  }
  if (auto m = get("auroc_monotonicity"); !m.is_null()) {
    out += fmt::format("- P(monotonic) = {:.3f}\n", m.at("probability").get<double>());
  }
  if (auto g = get("gain70"); !g.is_null()) {
    out += fmt::format("- Gain at 70%: Valid mean {:+.3f}, Invalid mean {:+.3f}\n",
                       g.at("valid_mean").get<double>(), g.at("invalid_mean").get<double>());
    stat_line("Gain at 70% Mann-Whitney U", g.at("mann_whitney"));
    if (g.contains("anova")) stat_line("Gain at 70% ANOVA", g.at("anova"));
  }
  stat_line("Gain at 50% ANOVA", get("gain50_anova"));
  stat_line("Within Valid: L vs AUROC (Spearman)", get("within_valid_l_vs_auroc"));
  stat_line("Within Valid: L vs gain at 70% (Spearman)", get("within_valid_l_vs_gain70"));
  stat_line("Within Valid: r vs AUROC (Spearman)", get("within_valid_r_vs_auroc"));
  stat_line("Per-track r vs AUROC (Spearman, pooled)", get("per_track_r_vs_auroc"));
  stat_line("Per-track r vs AUROC, Valid only", get("per_track_r_vs_auroc_valid"));
  for (const auto& a : get("absent")) {
    out += fmt::format("- absent: {} ({})\n", a.at("test").get<std::string>(),
                       a.at("reason").get<std::string>());
  }
  return out;
}

}  // namespace vscreen
