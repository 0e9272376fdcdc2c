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

// Item-level data model for confidence logs: one record per (model, item)
// carrying correctness and the two binary probes (KEEP/WITHDRAW, BET/NO BET).

#ifndef VSCREEN_CORE_HPP_
#define VSCREEN_CORE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vscreen {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ItemRecord {
  std::string model_id;
  std::string family;
  std::string track;
  std::string item_id;
  bool correct = false;
  bool keep = false;  // KEEP = true, WITHDRAW = false
  bool bet = false;   // BET = true, NO BET = false

  friend bool operator==(const ItemRecord&, const ItemRecord&) = default;
};

struct ModelDataset {
  std::string model_id;
  std::string family;
  std::vector<ItemRecord> items;

  std::size_t size() const { return items.size(); }
};

/// Four-level confidence built from the two probes:
/// KEEP+BET = 3, KEEP+NO BET = 2, WITHDRAW+BET = 1, WITHDRAW+NO BET = 0.
class OrdinalConfidence {
 public:
  static constexpr int kLevels = 4;

  static constexpr OrdinalConfidence FromProbes(bool keep, bool bet) {
    return OrdinalConfidence((keep ? 2 : 0) + (bet ? 1 : 0));
  }

  constexpr int level() const { return level_; }
  constexpr bool keep() const { return level_ >= 2; }
  constexpr bool bet() const { return (level_ & 1) != 0; }

  friend constexpr auto operator<=>(OrdinalConfidence, OrdinalConfidence) = default;

 private:
  constexpr explicit OrdinalConfidence(int level) : level_(level) {}
  int level_;
};

constexpr OrdinalConfidence ordinal_confidence(bool keep, bool bet) {
  return OrdinalConfidence::FromProbes(keep, bet);
}

inline OrdinalConfidence ordinal_confidence(const ItemRecord& item) {
  return OrdinalConfidence::FromProbes(item.keep, item.bet);
}

/// 2x2 counts of KEEP/WITHDRAW against correct/incorrect.
struct ContingencyTable {
  std::int64_t a = 0;  // KEEP and correct
  std::int64_t b = 0;  // KEEP and incorrect
  std::int64_t c = 0;  // WITHDRAW and correct
  std::int64_t d = 0;  // WITHDRAW and incorrect

  std::int64_t n() const { return a + b + c + d; }
  std::int64_t min_cell() const;

  void Add(bool keep, bool correct) {
    if (keep) {
      ++(correct ? a : b);
    } else {
      ++(correct ? c : d);
    }
  }

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

/// Throws Error on an empty collection.
ContingencyTable contingency(std::span<const ItemRecord> items);

/// (a + c) / n. Throws Error on an empty collection.
double baseline_accuracy(std::span<const ItemRecord> items);
double baseline_accuracy(const ContingencyTable& table);

/// Per-level counts of correct and incorrect items. Enough to compute
/// AUROC and every selective-prediction quantity without the raw items.
struct ConfidenceHistogram {
  std::array<std::int64_t, OrdinalConfidence::kLevels> correct{};
  std::array<std::int64_t, OrdinalConfidence::kLevels> incorrect{};

  void Add(OrdinalConfidence conf, bool is_correct) {
    ++(is_correct ? correct : incorrect)[static_cast<std::size_t>(conf.level())];
  }

  std::int64_t n_correct() const;
  std::int64_t n_incorrect() const;
  std::int64_t n() const { return n_correct() + n_incorrect(); }

  static ConfidenceHistogram FromItems(std::span<const ItemRecord> items);
};

/// Default track set T1..T6.
std::vector<std::string> default_tracks();

}  // namespace vscreen

#endif  // VSCREEN_CORE_HPP_
