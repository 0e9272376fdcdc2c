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

// Selective-prediction criterion metrics on the 0-3 ordinal confidence.

#ifndef VSCREEN_SELECTIVE_HPP_
#define VSCREEN_SELECTIVE_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vscreen/core.hpp"

namespace vscreen {

struct RiskCoveragePoint {
  double coverage = 1.0;
  double accuracy = 0.0;
};

struct RiskCoverageCurve {
  std::vector<RiskCoveragePoint> points;  // descending coverage
  double rc_auc = 0.0;                    // trapezoid of accuracy, higher = better
};

struct SelectiveMetrics {
  std::optional<double> auroc;
  std::map<double, double> gains;  // coverage -> gain
  RiskCoverageCurve curve;
  std::int64_t n_correct = 0;
  std::int64_t n_incorrect = 0;
};

/// Probability that a random correct item outranks a random incorrect one,
/// ties counting half. Empty when either class is empty.
std::optional<double> type2_auroc(const ConfidenceHistogram& hist);
std::optional<double> type2_auroc(std::span<const ItemRecord> items);

/// Accuracy of the top `coverage` fraction by confidence. The retained mass
/// is coverage * n exactly; the boundary tie group is included fractionally,
/// which equals the expectation over random tie orders.
double selective_accuracy(const ConfidenceHistogram& hist, double coverage);
double selective_accuracy(std::span<const ItemRecord> items, double coverage);

double selective_gain(const ConfidenceHistogram& hist, double coverage);
double selective_gain(std::span<const ItemRecord> items, double coverage);

/// 1.0, 0.9, ..., 0.1.
std::vector<double> default_coverage_grid();

RiskCoverageCurve risk_coverage_curve(const ConfidenceHistogram& hist,
                                      const std::vector<double>& grid = default_coverage_grid());
RiskCoverageCurve risk_coverage_curve(std::span<const ItemRecord> items,
                                      const std::vector<double>& grid = default_coverage_grid());

/// Trapezoidal area of accuracy over the curve's coverage range.
double trapezoid_area(const std::vector<RiskCoveragePoint>& points);

/// Coverages reported as gain columns (80%, 70%, 50%).
std::vector<double> default_gain_coverages();

SelectiveMetrics selective_metrics(std::span<const ItemRecord> items,
                                   const std::vector<double>& gain_coverages = default_gain_coverages(),
                                   const std::vector<double>& grid = default_coverage_grid());

struct TrackMetrics {
  std::optional<double> auroc;
  std::optional<double> r;
  std::int64_t n = 0;
  std::int64_t n_correct = 0;
  std::int64_t n_incorrect = 0;
};

struct PerTrackReport {
  std::map<std::string, TrackMetrics> tracks;
  // Over tracks with a defined AUROC. SD is the sample SD (empty below 2).
  std::optional<double> mean_auroc;
  std::optional<double> sd_auroc;
};

PerTrackReport per_track_metrics(const ModelDataset& dataset);

}  // namespace vscreen

#endif  // VSCREEN_SELECTIVE_HPP_
