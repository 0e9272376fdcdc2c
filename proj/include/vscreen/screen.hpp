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

// Validity screen for binary confidence probes.
//
// Indices, from the KEEP/WITHDRAW x correct/incorrect table (a, b, c, d):
//
//   L    = (a + b) / n                       KEEP rate
//   Fp   = c / (a + c)                       P(WITHDRAW | correct)
//   RBS  = c / (a + c) - d / (b + d)         P(W | correct) - P(W | incorrect)
//   r    = (ad - bc) / sqrt((a+b)(c+d)(a+c)(b+d))   phi coefficient
//   TRIN = fraction of items where KEEP and BET disagree
//
// Classification, first matching rule wins:
//   Invalid        r significantly negative, or L >= l_invalid_threshold
//   Indeterminate  r not significantly positive, or Fp >= fp threshold,
//                  or the RBS CI contains zero while r is non-significant
//   Valid          otherwise
// A min-cell warning is attached without changing the tier.

#ifndef VSCREEN_SCREEN_HPP_
#define VSCREEN_SCREEN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vscreen/core.hpp"
#include "vscreen/parallel.hpp"

namespace vscreen {

enum class Sidedness { kOneTailed, kTwoTailed };

struct ScreenConfig {
  double l_invalid_threshold = 0.95;
  double fp_indeterminate_threshold = 0.25;
  double alpha = 0.05;
  Sidedness r_sig_sidedness = Sidedness::kOneTailed;
  std::int64_t rbs_bootstrap_samples = 10'000;
  std::int64_t min_cell_warning = 5;
  std::uint64_t seed = 0;

  /// Throws Error when a threshold is outside (0,1) or fewer than 1,000
  /// bootstrap samples are requested.
  void Validate() const;
};

std::string_view to_string(Sidedness s);
Sidedness parse_sidedness(std::string_view text);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool Contains(double x) const { return lower <= x && x <= upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Undefined quantities (zero denominators, degenerate margins) are empty
/// optionals, never NaN.
struct ValidityIndices {
  ContingencyTable table;
  double L = 0.0;
  std::optional<double> Fp;
  std::optional<double> RBS;
  std::optional<double> r;
  double TRIN = 0.0;
  std::optional<double> r_p_value;
  std::optional<Interval> rbs_ci;
  std::int64_t min_cell = 0;
  std::int64_t n = 0;
};

enum class TierValue { kInvalid, kIndeterminate, kValid };

std::string_view to_string(TierValue t);
TierValue parse_tier(std::string_view text);

// Rule and warning names as they appear in reports.
namespace reasons {
inline constexpr std::string_view kInversion = "inversion";
inline constexpr std::string_view kBlanketConfidence = "blanket-confidence";
inline constexpr std::string_view kRNotSignificant = "r-not-significant";
inline constexpr std::string_view kFpElevated = "fp-elevated";
inline constexpr std::string_view kRbsCiContainsZero = "rbs-ci-contains-zero";
inline constexpr std::string_view kRUndefined = "r-undefined";
inline constexpr std::string_view kInsufficientData = "insufficient-data";
}  // namespace reasons

struct Tier {
  TierValue value = TierValue::kIndeterminate;
  std::vector<std::string> reasons;
  std::vector<std::string> warnings;

  friend bool operator==(const Tier&, const Tier&) = default;
};

std::optional<double> fp_index(const ContingencyTable& t);
std::optional<double> rbs_index(const ContingencyTable& t);
std::optional<double> phi_coefficient(const ContingencyTable& t);

/// p-value of phi via z = phi * sqrt(n). One-tailed in the direction of
/// the observed sign, or two-tailed.
double phi_p_value(double phi, std::int64_t n, Sidedness sidedness);

double trin_index(std::span<const ItemRecord> items);

/// All indices except the RBS bootstrap interval.
ValidityIndices point_indices(const ContingencyTable& table, double trin,
                              const ScreenConfig& config);

/// Percentile bootstrap CI of RBS, resampling items with replacement.
/// Draws where RBS is undefined are discarded; empty if none remain.
std::optional<Interval> rbs_bootstrap_ci(std::span<const ItemRecord> items,
                                         const ScreenConfig& config,
                                         Execution exec = Execution::kParallel);

/// Throws Error on empty input or when `table` does not describe `items`.
ValidityIndices compute_indices(const ContingencyTable& table,
                                std::span<const ItemRecord> items,
                                const ScreenConfig& config,
                                Execution exec = Execution::kParallel);

ValidityIndices compute_indices(std::span<const ItemRecord> items, const ScreenConfig& config,
                                Execution exec = Execution::kParallel);

Tier classify(const ValidityIndices& indices, const ScreenConfig& config);

}  // namespace vscreen

#endif  // VSCREEN_SCREEN_HPP_
