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

// Reading and writing the canonical item-level CSV:
//
//   model,family,track,item_id,correct,keep,bet
//
// Identifiers are restricted to [A-Za-z0-9._-], so no quoting is needed.

#ifndef VSCREEN_DATASET_IO_HPP_
#define VSCREEN_DATASET_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "vscreen/core.hpp"

namespace vscreen {

inline constexpr std::string_view kDatasetHeader = "model,family,track,item_id,correct,keep,bet";

/// Parse failure tied to a 1-based line number of the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses the CSV text. Models come out in order of first appearance and
/// items keep their row order. An empty body yields an empty collection.
///
/// Rejects: a wrong header, rows with the wrong field count, identifiers
/// outside the allowed charset, non-binary correct/keep/bet values, a track
/// not in `tracks`, a family that changes within one model, and duplicate
/// (model, item_id) pairs (the message names both lines).
std::vector<ModelDataset> parse_dataset(std::string_view text,
                                        const std::vector<std::string>& tracks = default_tracks());

std::vector<ModelDataset> load_dataset(const std::string& path,
                                       const std::vector<std::string>& tracks = default_tracks());

std::string serialize_dataset(const std::vector<ModelDataset>& datasets);

bool is_valid_identifier(std::string_view id);

}  // namespace vscreen

#endif  // VSCREEN_DATASET_IO_HPP_
