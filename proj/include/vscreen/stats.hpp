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

// Inferential tests used to validate tiers against the criterion.

#ifndef VSCREEN_STATS_HPP_
#define VSCREEN_STATS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vscreen/parallel.hpp"
#include "vscreen/screen.hpp"

namespace vscreen {

struct StatResult {
  std::string name;
  double statistic = 0.0;
  std::optional<double> p_value;
  std::optional<double> effect_size;
  std::string method;  // "exact" | "normal-approximation" | "bootstrap" | "parametric"
  std::vector<std::int64_t> n_per_group;
  std::optional<std::uint64_t> seed;
};

enum class Alternative { kGreater, kLess };

/// Enumeration is used while C(n_a + n_b, n_a) stays at or below this.
inline constexpr std::uint64_t kExactEnumerationLimit = 1'000'000;

/// U = sum over pairs of 1(a > b) + 0.5 * 1(a == b). Exact p by enumerating
/// every assignment of the pooled values to group A when feasible, else the
/// tie-corrected normal approximation with continuity correction.
StatResult mann_whitney_u(std::span<const double> group_a, std::span<const double> group_b,
                          Alternative alternative = Alternative::kGreater);

/// F, p from F(k-1, n-k), effect_size = eta squared (empty if SS_total = 0).
StatResult one_way_anova(const std::vector<std::vector<double>>& groups);

/// Pooled-SD Cohen's d. Throws Error when n < 2 in a group or the pooled
/// variance is zero.
double cohens_d(std::span<const double> group_a, std::span<const double> group_b);

/// Average ranks for ties; p two-sided from t with n-2 df. Throws Error on
/// length mismatch, n < 3, or a constant input.
StatResult spearman_rho(std::span<const double> x, std::span<const double> y);

std::vector<double> average_ranks(std::span<const double> values);

/// Linear-interpolation percentile (q in [0,1]) of unsorted data.
double percentile(std::vector<double> values, double q);

struct TierMean {
  double mean = 0.0;
  Interval ci;
};

/// Model-level percentile bootstrap of each tier's mean (95% CI).
std::map<TierValue, TierMean> bootstrap_tier_means(
    const std::map<TierValue, std::vector<double>>& tier_values, std::int64_t resamples,
    std::uint64_t seed, Execution exec = Execution::kParallel);

/// Fraction of joint resamples with mean(Invalid) < mean(Indeterminate) <
/// mean(Valid). Throws Error when a tier is missing or empty.
double monotonicity_probability(const std::map<TierValue, std::vector<double>>& tier_values,
                                std::int64_t resamples, std::uint64_t seed,
                                Execution exec = Execution::kParallel);

}  // namespace vscreen

#endif  // VSCREEN_STATS_HPP_
