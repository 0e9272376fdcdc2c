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

#include "vscreen/dataset_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace vscreen {
namespace {

constexpr std::size_t kFields = 7;

bool parse_bit(std::string_view field) { return field == "1"; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(fmt::format("line {}: {}", line, what)), line_(line) {}

bool is_valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') ||
           ch == '.' || ch == '_' || ch == '-';
  });
}

std::vector<ModelDataset> parse_dataset(std::string_view text,
                                        const std::vector<std::string>& tracks) {
  std::vector<ModelDataset> datasets;
  std::unordered_map<std::string, std::size_t> model_index;
  // (model, item) -> line of first occurrence
  std::unordered_map<std::string, std::size_t> seen;

  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);

    if (!header_seen) {
      if (line != kDatasetHeader) {
        throw ParseError(line_no, fmt::format("expected header '{}'", kDatasetHeader));
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) {
      if (pos >= text.size()) break;  // trailing newline
      throw ParseError(line_no, "empty row");
    }

    auto fields = split_fields(line);
    if (fields.size() != kFields) {
      throw ParseError(line_no, fmt::format("expected {} fields, found {}", kFields, fields.size()));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!is_valid_identifier(fields[i])) {
        throw ParseError(line_no, fmt::format("invalid identifier '{}'", fields[i]));
      }
    }
    for (std::size_t i = 4; i < kFields; ++i) {
      if (fields[i] != "0" && fields[i] != "1") {
        throw ParseError(line_no, fmt::format("non-binary value '{}' in column {}", fields[i],
                                              split_fields(kDatasetHeader)[i]));
      }
    }
    if (std::find(tracks.begin(), tracks.end(), fields[2]) == tracks.end()) {
      throw ParseError(line_no, fmt::format("unknown track label '{}'", fields[2]));
    }

    ItemRecord rec{std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
                   std::string(fields[3]), parse_bit(fields[4]), parse_bit(fields[5]),
                   parse_bit(fields[6])};

    std::string key = rec.model_id + '\x1f' + rec.item_id;
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      throw ParseError(line_no, fmt::format("duplicate (model, item_id) ({}, {}) on lines {} and {}",
                                            rec.model_id, rec.item_id, it->second, line_no));
    }

    auto [mit, fresh] = model_index.emplace(rec.model_id, datasets.size());
    if (fresh) {
      datasets.push_back(ModelDataset{rec.model_id, rec.family, {}});
    } else if (datasets[mit->second].family != rec.family) {
      throw ParseError(line_no, fmt::format("model '{}' changes family from '{}' to '{}'",
                                            rec.model_id, datasets[mit->second].family,
                                            rec.family));
    }
    datasets[mit->second].items.push_back(std::move(rec));
  }
  if (!header_seen) throw ParseError(1, "missing header");
  return datasets;
}

std::vector<ModelDataset> load_dataset(const std::string& path,
                                       const std::vector<std::string>& tracks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), tracks);
}

std::string serialize_dataset(const std::vector<ModelDataset>& datasets) {
  std::string out(kDatasetHeader);
  out += '\n';
  for (const auto& ds : datasets) {
    for (const auto& r : ds.items) {
      out += fmt::format("{},{},{},{},{:d},{:d},{:d}\n", r.model_id, r.family, r.track, r.item_id,
                         r.correct ? 1 : 0, r.keep ? 1 : 0, r.bet ? 1 : 0);
    }
  }
  return out;
}

}  // namespace vscreen
