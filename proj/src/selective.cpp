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

#include "vscreen/selective.hpp"

#include <fmt/format.h>

#include <cmath>

#include "vscreen/screen.hpp"

namespace vscreen {
namespace {

void check_coverage(double coverage) {
  if (!(coverage > 0.0 && coverage <= 1.0)) {
    throw Error(fmt::format("coverage {} outside (0,1]", coverage));
  }
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error("coverage grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_coverage(grid[i]);
    if (i > 0 && !(grid[i] < grid[i - 1])) {
      throw Error("coverage grid must be strictly decreasing");
    }
  }
}

}  // namespace

std::optional<double> type2_auroc(const ConfidenceHistogram& hist) {
  const std::int64_t n_correct = hist.n_correct();
  const std::int64_t n_incorrect = hist.n_incorrect();
  if (n_correct == 0 || n_incorrect == 0) return std::nullopt;
  // Doubled pair score: 2 per correct-above-incorrect pair, 1 per tie.
  std::int64_t twice_wins = 0;
  std::int64_t incorrect_below = 0;
  for (std::size_t level = 0; level < hist.correct.size(); ++level) {
    twice_wins += hist.correct[level] * (2 * incorrect_below + hist.incorrect[level]);
    incorrect_below += hist.incorrect[level];
  }
  return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(n_correct) *
                                            static_cast<double>(n_incorrect));
}

std::optional<double> type2_auroc(std::span<const ItemRecord> items) {
  return type2_auroc(ConfidenceHistogram::FromItems(items));
}

double selective_accuracy(const ConfidenceHistogram& hist, double coverage) {
  check_coverage(coverage);
  const std::int64_t n = hist.n();
  if (n == 0) throw Error("selective_accuracy: empty item collection");
  const double retained = coverage * static_cast<double>(n);
  double remaining = retained;
  double correct_mass = 0.0;
  for (int level = OrdinalConfidence::kLevels - 1; level >= 0 && remaining > 0.0; --level) {
    const auto idx = static_cast<std::size_t>(level);
    const auto group = hist.correct[idx] + hist.incorrect[idx];
    if (group == 0) continue;
    if (static_cast<double>(group) <= remaining) {
      correct_mass += static_cast<double>(hist.correct[idx]);
      remaining -= static_cast<double>(group);
    } else {
      correct_mass += static_cast<double>(hist.correct[idx]) * (remaining / static_cast<double>(group));
      remaining = 0.0;
    }
  }
  return correct_mass / retained;
}

double selective_accuracy(std::span<const ItemRecord> items, double coverage) {
  if (items.empty()) throw Error("selective_accuracy: empty item collection");
  return selective_accuracy(ConfidenceHistogram::FromItems(items), coverage);
}

double selective_gain(const ConfidenceHistogram& hist, double coverage) {
  const double acc = selective_accuracy(hist, coverage);
  return acc - static_cast<double>(hist.n_correct()) / static_cast<double>(hist.n());
}

double selective_gain(std::span<const ItemRecord> items, double coverage) {
  if (items.empty()) throw Error("selective_gain: empty item collection");
  return selective_gain(ConfidenceHistogram::FromItems(items), coverage);
}

std::vector<double> default_coverage_grid() {
  std::vector<double> grid;
  for (int k = 10; k >= 1; --k) grid.push_back(k / 10.0);
  return grid;
}

std::vector<double> default_gain_coverages() { return {0.8, 0.7, 0.5}; }

double trapezoid_area(const std::vector<RiskCoveragePoint>& points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double width = points[i - 1].coverage - points[i].coverage;
    area += 0.5 * (points[i - 1].accuracy + points[i].accuracy) * width;
  }
  return area;
}

RiskCoverageCurve risk_coverage_curve(const ConfidenceHistogram& hist,
                                      const std::vector<double>& grid) {
  check_grid(grid);
  RiskCoverageCurve curve;
  curve.points.reserve(grid.size());
  for (double c : grid) curve.points.push_back({c, selective_accuracy(hist, c)});
  curve.rc_auc = trapezoid_area(curve.points);
  return curve;
}

RiskCoverageCurve risk_coverage_curve(std::span<const ItemRecord> items,
                                      const std::vector<double>& grid) {
  if (items.empty()) throw Error("risk_coverage_curve: empty item collection");
  return risk_coverage_curve(ConfidenceHistogram::FromItems(items), grid);
}

SelectiveMetrics selective_metrics(std::span<const ItemRecord> items,
                                   const std::vector<double>& gain_coverages,
                                   const std::vector<double>& grid) {
  if (items.empty()) throw Error("selective_metrics: empty item collection");
  const auto hist = ConfidenceHistogram::FromItems(items);
  SelectiveMetrics m;
  m.auroc = type2_auroc(hist);
  for (double c : gain_coverages) m.gains[c] = selective_gain(hist, c);
  m.curve = risk_coverage_curve(hist, grid);
  m.n_correct = hist.n_correct();
  m.n_incorrect = hist.n_incorrect();
  return m;
}

PerTrackReport per_track_metrics(const ModelDataset& dataset) {
  std::map<std::string, std::pair<ConfidenceHistogram, ContingencyTable>> acc;
  for (const auto& item : dataset.items) {
    auto& [hist, table] = acc[item.track];
    hist.Add(ordinal_confidence(item), item.correct);
    table.Add(item.keep, item.correct);
  }
  PerTrackReport report;
  std::vector<double> defined;
  for (const auto& [track, pair] : acc) {
    const auto& [hist, table] = pair;
    TrackMetrics m;
    m.auroc = type2_auroc(hist);
    m.r = phi_coefficient(table);
    m.n = hist.n();
    m.n_correct = hist.n_correct();
    m.n_incorrect = hist.n_incorrect();
    if (m.auroc) defined.push_back(*m.auroc);
    report.tracks.emplace(track, m);
  }
  if (!defined.empty()) {
    double sum = 0.0;
    for (double x : defined) sum += x;
    const double mean = sum / static_cast<double>(defined.size());
    report.mean_auroc = mean;
    if (defined.size() >= 2) {
      double ss = 0.0;
      for (double x : defined) ss += (x - mean) * (x - mean);
      report.sd_auroc = std::sqrt(ss / static_cast<double>(defined.size() - 1));
    }
  }
  return report;
}

}  // namespace vscreen
