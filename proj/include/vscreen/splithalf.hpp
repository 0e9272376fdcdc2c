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

// Split-half cross-validation: screen on one random half of the items,
// measure AUROC on the other half, compare Valid and Invalid with Cohen's d.

#ifndef VSCREEN_SPLITHALF_HPP_
#define VSCREEN_SPLITHALF_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vscreen/core.hpp"
#include "vscreen/parallel.hpp"
#include "vscreen/screen.hpp"

namespace vscreen {

struct SplitHalfResult {
  std::vector<double> per_split_d;
  double median_d = 0.0;
  Interval d_ci;
  double p_d_positive = 0.0;
  std::int64_t n_splits_requested = 0;
  std::int64_t n_splits_retained = 0;
};

/// One global split of the union of item ids applies to every model. A
/// split is dropped when Valid or Invalid has fewer than two models with a
/// defined held-out AUROC, or when d is undefined.
///
/// The RBS interval is not recomputed per split: under the classification
/// rules it can only matter when r is already non-significant.
///
/// Throws Error with fewer than 2 models, n_splits < 1, or no retained split.
SplitHalfResult split_half_cv(std::span<const ModelDataset> datasets, const ScreenConfig& config,
                              std::int64_t n_splits, std::uint64_t seed,
                              Execution exec = Execution::kParallel);

/// Per-split d before aggregation; empty entries are dropped splits.
std::vector<std::optional<double>> split_half_d(std::span<const ModelDataset> datasets,
                                                const ScreenConfig& config, std::int64_t n_splits,
                                                std::uint64_t seed,
                                                Execution exec = Execution::kParallel);

}  // namespace vscreen

#endif  // VSCREEN_SPLITHALF_HPP_
