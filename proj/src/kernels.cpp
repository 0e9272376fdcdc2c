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

#include "vscreen/kernels.hpp"

#include <array>
#include <limits>
#include <numeric>

#include "vscreen/rng.hpp"
#include "vscreen/screen.hpp"

namespace vscreen::kernels {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rbs_from_counts(const std::array<std::int64_t, 4>& cells) {
  const auto a = cells[0], b = cells[1], c = cells[2], d = cells[3];
  if (a + c == 0 || b + d == 0) return kNaN;
  return static_cast<double>(c) / static_cast<double>(a + c) -
         static_cast<double>(d) / static_cast<double>(b + d);
}

}  // namespace

std::uint8_t cell_code(bool keep, bool correct) {
  return static_cast<std::uint8_t>((keep ? 0 : 2) + (correct ? 0 : 1));
}

namespace serial {

std::vector<double> bootstrap_rbs(std::span<const ItemRecord> items, std::int64_t resamples,
                                  std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(resamples));
  std::vector<ItemRecord> draw(items.size());
  for (std::int64_t b = 0; b < resamples; ++b) {
    Substream rng(seed, streams::kRbsBootstrap, static_cast<std::uint64_t>(b));
    for (auto& slot : draw) slot = items[rng.Below(items.size())];
    auto rbs = rbs_index(contingency(draw));
    out.push_back(rbs ? *rbs : kNaN);
  }
  return out;
}

std::vector<double> resample_means(std::span<const double> values, std::int64_t resamples,
                                   std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(resamples));
  std::vector<double> draw(values.size());
  for (std::int64_t b = 0; b < resamples; ++b) {
    Substream rng(seed, stream, static_cast<std::uint64_t>(b));
    for (auto& slot : draw) slot = values[rng.Below(values.size())];
    out.push_back(std::accumulate(draw.begin(), draw.end(), 0.0) /
                  static_cast<double>(draw.size()));
  }
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> bootstrap_rbs(std::span<const std::uint8_t> cells, std::int64_t resamples,
                                  std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(resamples));
  const std::size_t n = cells.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < resamples; ++b) {
    Substream rng(seed, streams::kRbsBootstrap, static_cast<std::uint64_t>(b));
    std::array<std::int64_t, 4> counts{};
    for (std::size_t i = 0; i < n; ++i) ++counts[cells[rng.Below(n)]];
    out[static_cast<std::size_t>(b)] = rbs_from_counts(counts);
  }
  return out;
}

std::vector<double> resample_means(std::span<const double> values, std::int64_t resamples,
                                   std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> out(static_cast<std::size_t>(resamples));
  const std::size_t n = values.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < resamples; ++b) {
    Substream rng(seed, stream, static_cast<std::uint64_t>(b));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += values[rng.Below(n)];
    out[static_cast<std::size_t>(b)] = sum / static_cast<double>(n);
  }
  return out;
}

}  // namespace omp
}  // namespace vscreen::kernels
