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

#include "vscreen/core.hpp"

#include <algorithm>
#include <numeric>

namespace vscreen {

std::int64_t ContingencyTable::min_cell() const { return std::min({a, b, c, d}); }

ContingencyTable contingency(std::span<const ItemRecord> items) {
  if (items.empty()) throw Error("contingency: empty item collection");
  ContingencyTable t;
  for (const auto& item : items) t.Add(item.keep, item.correct);
  return t;
}

double baseline_accuracy(const ContingencyTable& table) {
  if (table.n() == 0) throw Error("baseline_accuracy: empty table");
  return static_cast<double>(table.a + table.c) / static_cast<double>(table.n());
}

double baseline_accuracy(std::span<const ItemRecord> items) {
  return baseline_accuracy(contingency(items));
}

std::int64_t ConfidenceHistogram::n_correct() const {
  return std::accumulate(correct.begin(), correct.end(), std::int64_t{0});
}

std::int64_t ConfidenceHistogram::n_incorrect() const {
  return std::accumulate(incorrect.begin(), incorrect.end(), std::int64_t{0});
}

ConfidenceHistogram ConfidenceHistogram::FromItems(std::span<const ItemRecord> items) {
  ConfidenceHistogram h;
  for (const auto& item : items) h.Add(ordinal_confidence(item), item.correct);
  return h;
}

std::vector<std::string> default_tracks() { return {"T1", "T2", "T3", "T4", "T5", "T6"}; }

}  // namespace vscreen
