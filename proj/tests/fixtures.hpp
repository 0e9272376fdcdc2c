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

// Shared fixtures: model-level reference values for a 20-model cohort
// (by tier), and item-level builders for small hand cases.

#ifndef VSCREEN_TESTS_FIXTURES_HPP_
#define VSCREEN_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "vscreen/core.hpp"
#include "vscreen/synthetic.hpp"

namespace vscreen::testing {

// AUROC column, grouped by tier.
inline const std::vector<double> kValidAuroc = {.717, .686, .657, .651, .648, .646, .633,
                                                 .631, .617, .587, .584, .579, .561, .539};
inline const std::vector<double> kIndeterminateAuroc = {.615, .565, .483};
inline const std::vector<double> kInvalidAuroc = {.522, .518, .031};

// Gain at 70% coverage.
inline const std::vector<double> kValidGain70 = {.040, .043, .041, .030, .040, .038, .040,
                                                  .041, .022, .022, .029, .026, .020, .003};
inline const std::vector<double> kIndeterminateGain70 = {.045, .049, -.009};
inline const std::vector<double> kInvalidGain70 = {.014, .023, -.060};

// Gain at 50% coverage.
inline const std::vector<double> kValidGain50 = {.050, .042, .044, .057, .029, .046, .048,
                                                  .040, .032, .023, .040, .034, .017, -.004};
inline const std::vector<double> kIndeterminateGain50 = {.044, .044, .126};
inline const std::vector<double> kInvalidGain50 = {.000, .036, -.143};

// Builds items in the given cells; confidence: KEEP -> BET, WITHDRAW -> NO BET.
inline ModelDataset dataset_from_table(const ContingencyTable& t, const std::string& model = "m") {
  ModelDataset ds{model, "fam", {}};
  int id = 0;
  auto add = [&](std::int64_t count, bool keep, bool correct) {
    for (std::int64_t i = 0; i < count; ++i) {
      ds.items.push_back({model, "fam", "T" + std::to_string(id % 6 + 1),
                          "item-" + std::to_string(id), correct, keep, keep});
      ++id;
    }
  };
  add(t.a, true, true);
  add(t.b, true, false);
  add(t.c, false, true);
  add(t.d, false, false);
  return ds;
}

// Items from (confidence level, correct) pairs.
inline std::vector<ItemRecord> items_from_levels(const std::vector<std::pair<int, bool>>& cells) {
  std::vector<ItemRecord> items;
  int id = 0;
  for (auto [level, correct] : cells) {
    items.push_back({"m", "fam", "T1", "item-" + std::to_string(id++), correct, level >= 2,
                     (level & 1) != 0});
  }
  return items;
}

inline const ContingencyTable kR1Table{24, 71, 423, 6};

}  // namespace vscreen::testing

#endif  // VSCREEN_TESTS_FIXTURES_HPP_
