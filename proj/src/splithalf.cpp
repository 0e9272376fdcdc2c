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

#include "vscreen/splithalf.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "vscreen/rng.hpp"
#include "vscreen/selective.hpp"
#include "vscreen/stats.hpp"

namespace vscreen {
namespace {

constexpr std::int8_t kAbsent = -1;
constexpr std::int8_t kCorrect = 1;
constexpr std::int8_t kKeep = 2;
constexpr std::int8_t kBet = 4;

// Items of every model laid out against the sorted union of item ids.
struct Cohort {
  std::size_t n_items = 0;
  std::vector<std::vector<std::int8_t>> codes;  // [model][global item]
};

Cohort prepare(std::span<const ModelDataset> datasets) {
  std::vector<std::string> ids;
  for (const auto& ds : datasets) {
    for (const auto& it : ds.items) ids.push_back(it.item_id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);

  Cohort cohort;
  cohort.n_items = ids.size();
  for (const auto& ds : datasets) {
    std::vector<std::int8_t> codes(ids.size(), kAbsent);
    for (const auto& it : ds.items) {
      codes[index.at(it.item_id)] = static_cast<std::int8_t>(
          (it.correct ? kCorrect : 0) | (it.keep ? kKeep : 0) | (it.bet ? kBet : 0));
    }
    cohort.codes.push_back(std::move(codes));
  }
  return cohort;
}

std::optional<double> run_split(const Cohort& cohort, const ScreenConfig& config,
                                std::uint64_t seed, std::int64_t split) {
  Substream rng(seed, streams::kSplitHalf, static_cast<std::uint64_t>(split));
  std::vector<std::size_t> perm(cohort.n_items);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.Below(i)]);
  std::vector<char> screen_half(cohort.n_items, 0);
  for (std::size_t i = 0; i < cohort.n_items / 2; ++i) screen_half[perm[i]] = 1;

  std::vector<double> valid, invalid;
  for (const auto& codes : cohort.codes) {
    ContingencyTable table;
    std::int64_t discordant = 0;
    ConfidenceHistogram held_out;
    for (std::size_t i = 0; i < codes.size(); ++i) {
      const auto code = codes[i];
      if (code == kAbsent) continue;
      const bool correct = (code & kCorrect) != 0;
      const bool keep = (code & kKeep) != 0;
      const bool bet = (code & kBet) != 0;
      if (screen_half[i]) {
        table.Add(keep, correct);
        if (keep != bet) ++discordant;
      } else {
        held_out.Add(ordinal_confidence(keep, bet), correct);
      }
    }
    if (table.n() == 0) continue;
    const double trin = static_cast<double>(discordant) / static_cast<double>(table.n());
    const auto tier = classify(point_indices(table, trin, config), config).value;
    const auto auroc = type2_auroc(held_out);
    if (!auroc) continue;
    if (tier == TierValue::kValid) valid.push_back(*auroc);
    if (tier == TierValue::kInvalid) invalid.push_back(*auroc);
  }
  if (valid.size() < 2 || invalid.size() < 2) return std::nullopt;
  try {
    return cohens_d(valid, invalid);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<std::optional<double>> split_half_d(std::span<const ModelDataset> datasets,
                                                const ScreenConfig& config, std::int64_t n_splits,
                                                std::uint64_t seed, Execution exec) {
  if (datasets.size() < 2) throw Error("split_half_cv: need at least 2 models");
  if (n_splits < 1) throw Error("split_half_cv: n_splits must be positive");
  const Cohort cohort = prepare(datasets);
  std::vector<std::optional<double>> out(static_cast<std::size_t>(n_splits));
  if (exec == Execution::kSerial) {
    for (std::int64_t s = 0; s < n_splits; ++s) {
      out[static_cast<std::size_t>(s)] = run_split(cohort, config, seed, s);
    }
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t s = 0; s < n_splits; ++s) {
      out[static_cast<std::size_t>(s)] = run_split(cohort, config, seed, s);
    }
  }
  return out;
}

SplitHalfResult split_half_cv(std::span<const ModelDataset> datasets, const ScreenConfig& config,
                              std::int64_t n_splits, std::uint64_t seed, Execution exec) {
  const auto per_split = split_half_d(datasets, config, n_splits, seed, exec);
  SplitHalfResult res;
  res.n_splits_requested = n_splits;
  for (const auto& d : per_split) {
    if (d) res.per_split_d.push_back(*d);
  }
  res.n_splits_retained = static_cast<std::int64_t>(res.per_split_d.size());
  if (res.per_split_d.empty()) throw Error("split_half_cv: zero retained splits");
  res.median_d = percentile(res.per_split_d, 0.5);
  res.d_ci = {percentile(res.per_split_d, 0.025), percentile(res.per_split_d, 0.975)};
  const auto positive = std::count_if(res.per_split_d.begin(), res.per_split_d.end(),
                                      [](double d) { return d > 0.0; });
  res.p_d_positive = static_cast<double>(positive) / static_cast<double>(res.n_splits_retained);
  return res;
}

}  // namespace vscreen
