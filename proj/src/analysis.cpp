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

#include "vscreen/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "vscreen/report.hpp"
#include "vscreen/stats.hpp"

namespace vscreen {
namespace {

using nlohmann::json;

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "l_invalid_threshold",   "fp_indeterminate_threshold", "alpha", "r_sig_sidedness",
      "rbs_bootstrap_samples", "min_cell_warning",           "seed",  "tracks",
      "track_names"};
  return keys;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::optional<double> parse_number(std::string_view field, std::size_t line) {
  if (field.empty() || field == kUndefinedMarker) return std::nullopt;
  std::string s(field);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw Error(fmt::format("line {}: invalid number '{}'", line, field));
  }
  return v;
}

}  // namespace

ToolConfig tool_config_from_json(const json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_config_keys().contains(key)) throw Error(fmt::format("unknown config key '{}'", key));
  }
  ToolConfig cfg;
  auto& s = cfg.screen;
  try {
    s.l_invalid_threshold = j.value("l_invalid_threshold", s.l_invalid_threshold);
    s.fp_indeterminate_threshold =
        j.value("fp_indeterminate_threshold", s.fp_indeterminate_threshold);
    s.alpha = j.value("alpha", s.alpha);
    if (j.contains("r_sig_sidedness")) {
      s.r_sig_sidedness = parse_sidedness(j.at("r_sig_sidedness").get<std::string>());
    }
    s.rbs_bootstrap_samples = j.value("rbs_bootstrap_samples", s.rbs_bootstrap_samples);
    s.min_cell_warning = j.value("min_cell_warning", s.min_cell_warning);
    s.seed = j.value("seed", s.seed);
    if (j.contains("tracks")) cfg.tracks = j.at("tracks").get<std::vector<std::string>>();
    if (j.contains("track_names")) {
      cfg.track_names = j.at("track_names").get<std::map<std::string, std::string>>();
    }
  } catch (const json::exception& e) {
    throw Error(fmt::format("config: {}", e.what()));
  }
  s.Validate();
  if (cfg.tracks.empty()) throw Error("config: tracks must not be empty");
  return cfg;
}

ToolConfig load_tool_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(fmt::format("config '{}': {}", path, e.what()));
  }
  return tool_config_from_json(j);
}

json to_json(const ScreenConfig& c) {
  return json{{"l_invalid_threshold", c.l_invalid_threshold},
              {"fp_indeterminate_threshold", c.fp_indeterminate_threshold},
              {"alpha", c.alpha},
              {"r_sig_sidedness", std::string(to_string(c.r_sig_sidedness))},
              {"rbs_bootstrap_samples", c.rbs_bootstrap_samples},
              {"min_cell_warning", c.min_cell_warning},
              {"seed", c.seed}};
}

std::optional<double> ModelSummary::gain(double coverage) const {
  for (const auto& [c, g] : gains) {
    if (std::abs(c - coverage) < 1e-9) return g;
  }
  return std::nullopt;
}

std::optional<double> ModelSummary::keep_rate() const {
  if (indices) return indices->L;
  return summary_L;
}

std::optional<double> ModelSummary::phi() const {
  if (indices) return indices->r;
  return summary_r;
}

ModelSummary analyze_model(const ModelDataset& dataset, const ScreenConfig& config,
                           Execution exec) {
  if (dataset.items.empty()) {
    throw Error(fmt::format("model '{}' has no items", dataset.model_id));
  }
  ModelSummary m;
  m.model_id = dataset.model_id;
  m.family = dataset.family;
  m.n = static_cast<std::int64_t>(dataset.items.size());
  m.indices = compute_indices(dataset.items, config, exec);
  m.tier = classify(*m.indices, config);
  m.baseline = baseline_accuracy(m.indices->table);
  auto sel = selective_metrics(dataset.items);
  m.auroc = sel.auroc;
  m.gains = std::move(sel.gains);
  m.curve = std::move(sel.curve);
  m.per_track = per_track_metrics(dataset);
  return m;
}

std::vector<ModelSummary> analyze_cohort(std::span<const ModelDataset> datasets,
                                         const ScreenConfig& config, Execution exec) {
  std::vector<ModelSummary> out;
  out.reserve(datasets.size());
  for (const auto& ds : datasets) out.push_back(analyze_model(ds, config, exec));
  return out;
}

std::vector<ModelSummary> parse_summary_csv(std::string_view text) {
  static constexpr std::string_view kBase = "model,family,tier,baseline,auroc,gain80,gain70,gain50";
  std::vector<ModelSummary> out;
  std::size_t line_no = 0;
  bool with_l_r = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line == kBase) continue;
      if (line == std::string(kBase) + ",L,r") {
        with_l_r = true;
        continue;
      }
      throw Error(fmt::format("line 1: expected header '{}' (optionally followed by ',L,r')", kBase));
    }
    if (line.empty()) continue;
    const auto f = split_csv(line);
    const std::size_t expected = with_l_r ? 10 : 8;
    if (f.size() != expected) {
      throw Error(fmt::format("line {}: expected {} fields, found {}", line_no, expected, f.size()));
    }
    ModelSummary m;
    m.model_id = std::string(f[0]);
    m.family = std::string(f[1]);
    try {
      m.tier.value = parse_tier(f[2]);
    } catch (const Error& e) {
      throw Error(fmt::format("line {}: {}", line_no, e.what()));
    }
    m.baseline = parse_number(f[3], line_no);
    m.auroc = parse_number(f[4], line_no);
    const double coverages[] = {0.8, 0.7, 0.5};
    for (std::size_t i = 0; i < 3; ++i) {
      if (auto g = parse_number(f[5 + i], line_no)) m.gains[coverages[i]] = *g;
    }
    if (with_l_r) {
      m.summary_L = parse_number(f[8], line_no);
      m.summary_r = parse_number(f[9], line_no);
    }
    out.push_back(std::move(m));
  }
  if (line_no == 0) throw Error("summary CSV is empty");
  return out;
}

std::vector<ModelSummary> load_summary_csv(const std::string& path) {
  return parse_summary_csv(read_file(path));
}

std::vector<std::size_t> report_order(std::span<const ModelSummary> models) {
  auto block = [](TierValue t) {
    switch (t) {
      case TierValue::kValid:
        return 0;
      case TierValue::kIndeterminate:
        return 1;
      case TierValue::kInvalid:
        return 2;
    }
    return 1;
  };
  std::vector<std::size_t> order(models.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = models[i];
    const auto& b = models[j];
    if (block(a.tier.value) != block(b.tier.value)) {
      return block(a.tier.value) < block(b.tier.value);
    }
    if (a.auroc.has_value() != b.auroc.has_value()) return a.auroc.has_value();
    if (a.auroc && *a.auroc != *b.auroc) return *a.auroc > *b.auroc;
    return a.model_id < b.model_id;
  });
  return order;
}

json criterion_report(std::span<const ModelSummary> models, std::int64_t bootstrap_n,
                      std::uint64_t seed, Execution exec) {
  json report;
  json absent = json::array();
  auto attempt = [&](const std::string& key, const std::function<json()>& fn) {
    try {
      report[key] = fn();
    } catch (const Error& e) {
      absent.push_back({{"test", key}, {"reason", e.what()}});
    }
  };

  // Model-level values by tier; models without a metric are skipped.
  auto by_tier = [&](const std::function<std::optional<double>(const ModelSummary&)>& metric) {
    std::map<TierValue, std::vector<double>> out;
    for (const auto& m : models) {
      if (auto v = metric(m)) out[m.tier.value].push_back(*v);
    }
    return out;
  };
  auto auroc_of = [](const ModelSummary& m) { return m.auroc; };
  auto gain70_of = [](const ModelSummary& m) { return m.gain(0.7); };
  auto gain50_of = [](const ModelSummary& m) { return m.gain(0.5); };

  auto anova_over = [](const std::map<TierValue, std::vector<double>>& groups) {
    if (groups.size() < 2) throw Error("fewer than 2 tiers populated");
    std::vector<std::vector<double>> g;
    for (auto t : {TierValue::kValid, TierValue::kIndeterminate, TierValue::kInvalid}) {
      if (auto it = groups.find(t); it != groups.end()) g.push_back(it->second);
    }
    return g;
  };
  auto need = [](const std::map<TierValue, std::vector<double>>& groups, TierValue t) {
    auto it = groups.find(t);
    if (it == groups.end() || it->second.empty()) {
      throw Error(fmt::format("no {} models", to_string(t)));
    }
    return it->second;
  };

  json tiers = json::object();
  for (const auto& m : models) {
    auto& entry = tiers[std::string(to_string(m.tier.value))];
    entry["models"].push_back(m.model_id);
    entry["n"] = entry["models"].size();
  }
  report["n_models"] = models.size();
  report["tiers"] = tiers;

  const auto auroc = by_tier(auroc_of);
  attempt("auroc_anova", [&] {
    auto r = one_way_anova(anova_over(auroc));
    r.name = "auroc_anova";
    return to_json(r);
  });
  attempt("auroc_mann_whitney", [&] {
    auto r = mann_whitney_u(need(auroc, TierValue::kValid), need(auroc, TierValue::kInvalid));
    r.name = "auroc_mann_whitney_valid_gt_invalid";
    return to_json(r);
  });
  attempt("auroc_mann_whitney_without_extreme", [&] {
    // Drop the single lowest-AUROC Invalid model.
    const ModelSummary* extreme = nullptr;
    for (const auto& m : models) {
      if (m.tier.value == TierValue::kInvalid && m.auroc &&
          (extreme == nullptr || *m.auroc < *extreme->auroc)) {
        extreme = &m;
      }
    }
    if (extreme == nullptr) throw Error("no Invalid models");
    std::vector<double> rest;
    for (const auto& m : models) {
      if (m.tier.value == TierValue::kInvalid && m.auroc && &m != extreme) rest.push_back(*m.auroc);
    }
    if (rest.empty()) throw Error("only one Invalid model");
    auto r = mann_whitney_u(need(auroc, TierValue::kValid), rest);
    r.name = "auroc_mann_whitney_without_extreme";
    auto j = to_json(r);
    j["excluded_model"] = extreme->model_id;
    std::vector<double> without = rest;
    j["invalid_mean_without_extreme"] =
        std::accumulate(without.begin(), without.end(), 0.0) / static_cast<double>(without.size());
    return j;
  });
  attempt("auroc_cohens_d", [&] {
    return json{{"valid_vs_invalid",
                 cohens_d(need(auroc, TierValue::kValid), need(auroc, TierValue::kInvalid))},
                {"convention", "pooled SD, sample variances"}};
  });
  attempt("auroc_tier_bootstrap", [&] {
    if (auroc.empty()) throw Error("no AUROC values");
    json j;
    j["resamples"] = bootstrap_n;
    j["seed"] = seed;
    j["unit"] = "model";
    for (const auto& [tier, tm] : bootstrap_tier_means(auroc, bootstrap_n, seed, exec)) {
      const auto& vals = auroc.at(tier);
      json entry{{"mean", tm.mean}, {"ci", {tm.ci.lower, tm.ci.upper}}, {"n", vals.size()}};
      if (vals.size() >= 2) {
        double ss = 0.0;
        for (double x : vals) ss += (x - tm.mean) * (x - tm.mean);
        entry["sd"] = std::sqrt(ss / static_cast<double>(vals.size() - 1));
      }
      j["tiers"][std::string(to_string(tier))] = entry;
    }
    return j;
  });
  attempt("auroc_monotonicity", [&] {
    return json{{"probability", monotonicity_probability(auroc, bootstrap_n, seed, exec)},
                {"order", "Invalid < Indeterminate < Valid"},
                {"resamples", bootstrap_n},
                {"seed", seed}};
  });

  const auto gain70 = by_tier(gain70_of);
  attempt("gain70", [&] {
    const auto valid = need(gain70, TierValue::kValid);
    const auto invalid = need(gain70, TierValue::kInvalid);
    json j;
    j["valid_mean"] = std::accumulate(valid.begin(), valid.end(), 0.0) / valid.size();
    j["invalid_mean"] = std::accumulate(invalid.begin(), invalid.end(), 0.0) / invalid.size();
    auto u = mann_whitney_u(valid, invalid);
    u.name = "gain70_mann_whitney_valid_gt_invalid";
    j["mann_whitney"] = to_json(u);
    try {
      auto a = one_way_anova(anova_over(gain70));
      a.name = "gain70_anova";
      j["anova"] = to_json(a);
    } catch (const Error& e) {
      absent.push_back({{"test", "gain70.anova"}, {"reason", e.what()}});
    }
    return j;
  });
  attempt("gain50_anova", [&] {
    auto a = one_way_anova(anova_over(by_tier(gain50_of)));
    a.name = "gain50_anova";
    return to_json(a);
  });

  // Within-Valid correlations.
  std::vector<double> l_valid, r_valid, auroc_l, auroc_r, gain_l, l_for_gain;
  for (const auto& m : models) {
    if (m.tier.value != TierValue::kValid || !m.auroc) continue;
    if (auto l = m.keep_rate()) {
      l_valid.push_back(*l);
      auroc_l.push_back(*m.auroc);
      if (auto g = m.gain(0.7)) {
        l_for_gain.push_back(*l);
        gain_l.push_back(*g);
      }
    }
    if (auto r = m.phi()) {
      r_valid.push_back(*r);
      auroc_r.push_back(*m.auroc);
    }
  }
  attempt("within_valid_l_vs_auroc", [&] {
    auto s = spearman_rho(l_valid, auroc_l);
    s.name = "within_valid_l_vs_auroc";
    return to_json(s);
  });
  attempt("within_valid_l_vs_gain70", [&] {
    auto s = spearman_rho(l_for_gain, gain_l);
    s.name = "within_valid_l_vs_gain70";
    return to_json(s);
  });
  attempt("within_valid_r_vs_auroc", [&] {
    auto s = spearman_rho(r_valid, auroc_r);
    s.name = "within_valid_r_vs_auroc";
    return to_json(s);
  });

  // Per-track r against per-track AUROC, pooled over model-track cells.
  std::vector<double> tr_r, tr_auroc, tv_r, tv_auroc;
  for (const auto& m : models) {
    if (!m.per_track) continue;
    for (const auto& [track, tm] : m.per_track->tracks) {
      if (!tm.r || !tm.auroc) continue;
      tr_r.push_back(*tm.r);
      tr_auroc.push_back(*tm.auroc);
      if (m.tier.value == TierValue::kValid) {
        tv_r.push_back(*tm.r);
        tv_auroc.push_back(*tm.auroc);
      }
    }
  }
  attempt("per_track_r_vs_auroc", [&] {
    auto s = spearman_rho(tr_r, tr_auroc);
    s.name = "per_track_r_vs_auroc";
    return to_json(s);
  });
  attempt("per_track_r_vs_auroc_valid", [&] {
    auto s = spearman_rho(tv_r, tv_auroc);
    s.name = "per_track_r_vs_auroc_valid";
    return to_json(s);
  });

  json families = json::object();
  for (const auto& m : models) {
    auto& f = families[m.family];
    f["models"].push_back(m.model_id);
    f["tiers"][std::string(to_string(m.tier.value))].push_back(m.model_id);
  }
  std::set<std::string> invalid_families;
  for (const auto& m : models) {
    if (m.tier.value == TierValue::kInvalid) invalid_families.insert(m.family);
  }
  report["family_grouping"] = {{"families", families},
                               {"n_families", families.size()},
                               {"families_with_invalid", invalid_families}};
  report["absent"] = absent;
  return report;
}

}  // namespace vscreen
