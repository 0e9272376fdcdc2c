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

#include "vscreen/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "vscreen/kernels.hpp"
#include "vscreen/rng.hpp"

namespace vscreen {
namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

// C(n, k), saturating at limit + 1.
std::uint64_t capped_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is always integral.
    const auto num = static_cast<unsigned __int128>(result) * (n - k + i);
    const auto next = num / i;
    if (next > limit) return limit + 1;
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

// Doubled pair score of x against y: 2 if x > y, 1 on a tie.
std::int64_t twice_score(double x, double y) { return x > y ? 2 : (x == y ? 1 : 0); }

// Counts size-k subsets of `scores` whose score sum is at least (greater)
// or at most (less) `observed`.
std::uint64_t count_extreme_subsets(const std::vector<std::int64_t>& scores, std::size_t k,
                                    std::int64_t observed, Alternative alt) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::uint64_t hits = 0;
  while (true) {
    std::int64_t sum = 0;
    for (auto i : idx) sum += scores[i];
    if (alt == Alternative::kGreater ? sum >= observed : sum <= observed) ++hits;
    // Advance to the next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return hits;
}

}  // namespace

StatResult mann_whitney_u(std::span<const double> group_a, std::span<const double> group_b,
                          Alternative alternative) {
  if (group_a.empty() || group_b.empty()) throw Error("mann_whitney_u: empty group");
  const auto na = static_cast<std::int64_t>(group_a.size());
  const auto nb = static_cast<std::int64_t>(group_b.size());

  std::int64_t twice_u = 0;
  for (double x : group_a) {
    for (double y : group_b) twice_u += twice_score(x, y);
  }

  StatResult res;
  res.name = "mann_whitney_u";
  res.statistic = static_cast<double>(twice_u) / 2.0;
  res.n_per_group = {na, nb};
  res.effect_size = res.statistic / static_cast<double>(na * nb);

  std::vector<double> pooled(group_a.begin(), group_a.end());
  pooled.insert(pooled.end(), group_b.begin(), group_b.end());
  const auto n = static_cast<std::uint64_t>(pooled.size());
  const auto arrangements =
      capped_binomial(n, static_cast<std::uint64_t>(na), kExactEnumerationLimit);

  if (arrangements <= kExactEnumerationLimit) {
    // 2U of a subset S equals the sum of each member's doubled score against
    // the whole pool minus the within-S pairs, which contribute na(na-1).
    std::vector<std::int64_t> scores(pooled.size(), 0);
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      for (std::size_t j = 0; j < pooled.size(); ++j) {
        if (i != j) scores[i] += twice_score(pooled[i], pooled[j]);
      }
    }
    const std::int64_t observed = twice_u + na * (na - 1);
    const auto hits = count_extreme_subsets(scores, static_cast<std::size_t>(na), observed,
                                            alternative);
    res.p_value = static_cast<double>(hits) / static_cast<double>(arrangements);
    res.method = "exact";
    return res;
  }

  std::sort(pooled.begin(), pooled.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double nd = static_cast<double>(n);
  const double mu = static_cast<double>(na * nb) / 2.0;
  const double var =
      static_cast<double>(na * nb) / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
  const boost::math::normal standard;
  if (var <= 0.0) {
    res.p_value = 1.0;
  } else if (alternative == Alternative::kGreater) {
    const double z = (res.statistic - mu - 0.5) / std::sqrt(var);
    res.p_value = boost::math::cdf(boost::math::complement(standard, z));
  } else {
    const double z = (res.statistic - mu + 0.5) / std::sqrt(var);
    res.p_value = boost::math::cdf(standard, z);
  }
  res.method = "normal-approximation";
  return res;
}

StatResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error("one_way_anova: need at least 2 groups");
  std::size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) throw Error("one_way_anova: empty group");
    total += g.size();
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
  }
  const std::size_t k = groups.size();
  if (total <= k) throw Error("one_way_anova: need more observations than groups");
  const double grand_mean = grand_sum / static_cast<double>(total);

  double ss_between = 0.0;
  double ss_within = 0.0;
  double ss_total = 0.0;
  StatResult res;
  res.name = "one_way_anova";
  res.method = "parametric";
  for (const auto& g : groups) {
    const double m = mean_of(g);
    ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    for (double x : g) {
      ss_within += (x - m) * (x - m);
      ss_total += (x - grand_mean) * (x - grand_mean);
    }
    res.n_per_group.push_back(static_cast<std::int64_t>(g.size()));
  }

  const double df_between = static_cast<double>(k - 1);
  const double df_within = static_cast<double>(total - k);
  if (ss_total == 0.0) {
    res.statistic = 0.0;
    res.p_value = 1.0;
    return res;
  }
  if (ss_within == 0.0) throw Error("one_way_anova: zero within-group variance");
  res.statistic = (ss_between / df_between) / (ss_within / df_within);
  const boost::math::fisher_f dist(df_between, df_within);
  res.p_value = boost::math::cdf(boost::math::complement(dist, res.statistic));
  res.effect_size = ss_between / ss_total;
  return res;
}

double cohens_d(std::span<const double> group_a, std::span<const double> group_b) {
  if (group_a.size() < 2 || group_b.size() < 2) throw Error("cohens_d: need n >= 2 per group");
  const double na = static_cast<double>(group_a.size());
  const double nb = static_cast<double>(group_b.size());
  const double pooled =
      ((na - 1.0) * sample_variance(group_a) + (nb - 1.0) * sample_variance(group_b)) /
      (na + nb - 2.0);
  if (pooled <= 0.0) throw Error("cohens_d: zero pooled variance");
  return (mean_of(group_a) - mean_of(group_b)) / std::sqrt(pooled);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
    i = j;
  }
  return ranks;
}

StatResult spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("spearman_rho: length mismatch");
  if (x.size() < 3) throw Error("spearman_rho: need at least 3 pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean_of(rx);
  const double my = mean_of(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("spearman_rho: constant input");
  StatResult res;
  res.name = "spearman_rho";
  res.method = "t-approximation";
  res.statistic = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  res.effect_size = res.statistic;
  res.n_per_group = {static_cast<std::int64_t>(x.size())};
  const double df = static_cast<double>(x.size()) - 2.0;
  const double r2 = res.statistic * res.statistic;
  if (r2 >= 1.0) {
    res.p_value = 0.0;
  } else {
    const double t = std::abs(res.statistic) * std::sqrt(df / (1.0 - r2));
    const boost::math::students_t dist(df);
    res.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
  }
  return res;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("percentile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw Error("percentile: q outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

namespace {

std::uint64_t tier_stream(std::uint64_t base, TierValue t) {
  return base ^ ((static_cast<std::uint64_t>(t) + 1) << 8);
}

std::vector<double> tier_draws(std::span<const double> values, std::int64_t resamples,
                               std::uint64_t seed, std::uint64_t stream, Execution exec) {
  return exec == Execution::kSerial
             ? kernels::serial::resample_means(values, resamples, seed, stream)
             : kernels::omp::resample_means(values, resamples, seed, stream);
}

}  // namespace

std::map<TierValue, TierMean> bootstrap_tier_means(
    const std::map<TierValue, std::vector<double>>& tier_values, std::int64_t resamples,
    std::uint64_t seed, Execution exec) {
  if (resamples < 1000) throw Error("bootstrap_tier_means: need at least 1000 resamples");
  std::map<TierValue, TierMean> out;
  for (const auto& [tier, values] : tier_values) {
    if (values.empty()) {
      throw Error(fmt::format("bootstrap_tier_means: empty tier {}", to_string(tier)));
    }
    auto draws =
        tier_draws(values, resamples, seed, tier_stream(streams::kTierBootstrap, tier), exec);
    std::sort(draws.begin(), draws.end());
    out[tier] = TierMean{mean_of(values), {percentile(draws, 0.025), percentile(draws, 0.975)}};
  }
  return out;
}

double monotonicity_probability(const std::map<TierValue, std::vector<double>>& tier_values,
                                std::int64_t resamples, std::uint64_t seed, Execution exec) {
  if (resamples < 1) throw Error("monotonicity_probability: need at least one resample");
  std::map<TierValue, std::vector<double>> draws;
  for (auto tier : {TierValue::kInvalid, TierValue::kIndeterminate, TierValue::kValid}) {
    auto it = tier_values.find(tier);
    if (it == tier_values.end() || it->second.empty()) {
      throw Error(fmt::format("monotonicity_probability: missing tier {}", to_string(tier)));
    }
    draws[tier] =
        tier_draws(it->second, resamples, seed, tier_stream(streams::kMonotonicity, tier), exec);
  }
  const auto& inv = draws[TierValue::kInvalid];
  const auto& ind = draws[TierValue::kIndeterminate];
  const auto& val = draws[TierValue::kValid];
  std::int64_t ordered = 0;
  for (std::size_t b = 0; b < inv.size(); ++b) {
    if (inv[b] < ind[b] && ind[b] < val[b]) ++ordered;
  }
  return static_cast<double>(ordered) / static_cast<double>(resamples);
}

}  // namespace vscreen
