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

#include "vscreen/screen.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "vscreen/kernels.hpp"
#include "vscreen/stats.hpp"

namespace vscreen {

void ScreenConfig::Validate() const {
  auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_unit(l_invalid_threshold)) throw Error("l_invalid_threshold must lie in (0,1)");
  if (!in_unit(fp_indeterminate_threshold)) {
    throw Error("fp_indeterminate_threshold must lie in (0,1)");
  }
  if (!in_unit(alpha)) throw Error("alpha must lie in (0,1)");
  if (rbs_bootstrap_samples < 1000) throw Error("rbs_bootstrap_samples must be at least 1000");
  if (min_cell_warning < 0) throw Error("min_cell_warning must be non-negative");
}

std::string_view to_string(Sidedness s) {
  return s == Sidedness::kOneTailed ? "one-tailed" : "two-tailed";
}

Sidedness parse_sidedness(std::string_view text) {
  if (text == "one-tailed") return Sidedness::kOneTailed;
  if (text == "two-tailed") return Sidedness::kTwoTailed;
  throw Error(fmt::format("unknown sidedness '{}'", text));
}

std::string_view to_string(TierValue t) {
  switch (t) {
    case TierValue::kInvalid:
      return "Invalid";
    case TierValue::kIndeterminate:
      return "Indeterminate";
    case TierValue::kValid:
      return "Valid";
  }
  return "Indeterminate";
}

TierValue parse_tier(std::string_view text) {
  if (text == "Invalid") return TierValue::kInvalid;
  if (text == "Indeterminate" || text == "Indet." || text == "Indet") {
    return TierValue::kIndeterminate;
  }
  if (text == "Valid") return TierValue::kValid;
  throw Error(fmt::format("unknown tier '{}'", text));
}

std::optional<double> fp_index(const ContingencyTable& t) {
  if (t.a + t.c == 0) return std::nullopt;
  return static_cast<double>(t.c) / static_cast<double>(t.a + t.c);
}

std::optional<double> rbs_index(const ContingencyTable& t) {
  if (t.a + t.c == 0 || t.b + t.d == 0) return std::nullopt;
  return static_cast<double>(t.c) / static_cast<double>(t.a + t.c) -
         static_cast<double>(t.d) / static_cast<double>(t.b + t.d);
}

std::optional<double> phi_coefficient(const ContingencyTable& t) {
  const double denom = static_cast<double>(t.a + t.b) * static_cast<double>(t.c + t.d) *
                       static_cast<double>(t.a + t.c) * static_cast<double>(t.b + t.d);
  if (denom == 0.0) return std::nullopt;
  const double num = static_cast<double>(t.a) * static_cast<double>(t.d) -
                     static_cast<double>(t.b) * static_cast<double>(t.c);
  return std::clamp(num / std::sqrt(denom), -1.0, 1.0);
}

double phi_p_value(double phi, std::int64_t n, Sidedness sidedness) {
  const boost::math::normal standard;
  const double z = std::abs(phi) * std::sqrt(static_cast<double>(n));
  const double tail = boost::math::cdf(boost::math::complement(standard, z));
  return sidedness == Sidedness::kOneTailed ? tail : std::min(1.0, 2.0 * tail);
}

double trin_index(std::span<const ItemRecord> items) {
  if (items.empty()) throw Error("trin_index: empty item collection");
  const auto discordant =
      std::count_if(items.begin(), items.end(), [](const auto& it) { return it.keep != it.bet; });
  return static_cast<double>(discordant) / static_cast<double>(items.size());
}

ValidityIndices point_indices(const ContingencyTable& table, double trin,
                              const ScreenConfig& config) {
  if (table.n() <= 0) throw Error("compute_indices: empty input");
  ValidityIndices v;
  v.table = table;
  v.n = table.n();
  v.L = static_cast<double>(table.a + table.b) / static_cast<double>(v.n);
  v.Fp = fp_index(table);
  v.RBS = rbs_index(table);
  v.r = phi_coefficient(table);
  if (v.r) v.r_p_value = phi_p_value(*v.r, v.n, config.r_sig_sidedness);
  v.TRIN = trin;
  v.min_cell = table.min_cell();
  return v;
}

std::optional<Interval> rbs_bootstrap_ci(std::span<const ItemRecord> items,
                                         const ScreenConfig& config, Execution exec) {
  if (items.empty()) throw Error("rbs_bootstrap_ci: empty item collection");
  std::vector<double> draws;
  if (exec == Execution::kSerial) {
    draws = kernels::serial::bootstrap_rbs(items, config.rbs_bootstrap_samples, config.seed);
  } else {
    std::vector<std::uint8_t> cells;
    cells.reserve(items.size());
    for (const auto& it : items) cells.push_back(kernels::cell_code(it.keep, it.correct));
    draws = kernels::omp::bootstrap_rbs(cells, config.rbs_bootstrap_samples, config.seed);
  }
  std::erase_if(draws, [](double x) { return std::isnan(x); });
  if (draws.empty()) return std::nullopt;
  std::sort(draws.begin(), draws.end());
  const double half = config.alpha / 2.0;
  return Interval{percentile(draws, half), percentile(draws, 1.0 - half)};
}

ValidityIndices compute_indices(const ContingencyTable& table, std::span<const ItemRecord> items,
                                const ScreenConfig& config, Execution exec) {
  if (items.empty()) throw Error("compute_indices: empty input");
  if (contingency(items) != table) {
    throw Error("compute_indices: contingency table does not match the items");
  }
  auto v = point_indices(table, trin_index(items), config);
  if (v.RBS) v.rbs_ci = rbs_bootstrap_ci(items, config, exec);
  return v;
}

ValidityIndices compute_indices(std::span<const ItemRecord> items, const ScreenConfig& config,
                                Execution exec) {
  if (items.empty()) throw Error("compute_indices: empty input");
  return compute_indices(contingency(items), items, config, exec);
}

Tier classify(const ValidityIndices& indices, const ScreenConfig& config) {
  Tier tier;
  const bool r_defined = indices.r.has_value() && indices.r_p_value.has_value();
  const bool significant = r_defined && *indices.r_p_value < config.alpha;
  const bool sig_negative = significant && *indices.r < 0.0;
  const bool sig_positive = significant && *indices.r > 0.0;

  if (sig_negative) tier.reasons.emplace_back(reasons::kInversion);
  if (indices.L >= config.l_invalid_threshold) {
    tier.reasons.emplace_back(reasons::kBlanketConfidence);
  }

  if (!tier.reasons.empty()) {
    tier.value = TierValue::kInvalid;
  } else {
    if (!r_defined) {
      tier.reasons.emplace_back(reasons::kRUndefined);
    } else if (!sig_positive) {
      tier.reasons.emplace_back(reasons::kRNotSignificant);
    }
    if (indices.Fp && *indices.Fp >= config.fp_indeterminate_threshold) {
      tier.reasons.emplace_back(reasons::kFpElevated);
    }
    if (indices.rbs_ci && indices.rbs_ci->Contains(0.0) && !sig_positive) {
      tier.reasons.emplace_back(reasons::kRbsCiContainsZero);
    }
    tier.value = tier.reasons.empty() ? TierValue::kValid : TierValue::kIndeterminate;
  }

  if (!r_defined) tier.warnings.emplace_back(reasons::kRUndefined);
  if (indices.min_cell < config.min_cell_warning) {
    tier.warnings.emplace_back(reasons::kInsufficientData);
  }
  return tier;
}

}  // namespace vscreen
