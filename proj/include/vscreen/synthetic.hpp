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

// Seeded generators for the behavioural archetypes. Correctness is drawn at
// `accuracy`, KEEP conditionally on correctness, BET conditionally on KEEP.

#ifndef VSCREEN_SYNTHETIC_HPP_
#define VSCREEN_SYNTHETIC_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "vscreen/core.hpp"
#include "vscreen/screen.hpp"

namespace vscreen {

enum class BehaviourKind { kDiscriminating, kBlanket, kInverted, kAmbiguous };

std::string_view to_string(BehaviourKind k);
BehaviourKind parse_behaviour_kind(std::string_view text);

struct BehaviourProfile {
  BehaviourKind kind = BehaviourKind::kDiscriminating;
  double accuracy = 0.85;
  double p_keep_given_correct = 0.9;
  double p_keep_given_incorrect = 0.6;
  double p_bet_given_keep = 0.8;
  double p_bet_given_withdraw = 0.2;
  std::int64_t n_items = 524;
  std::int64_t tracks = 6;

  /// Probabilities in [0,1], n_items >= 1, tracks in [1, n_items], and the
  /// keep probabilities consistent with `kind`. Throws Error otherwise.
  void Validate() const;
};

/// Profile whose expected table matches the reconstructed DeepSeek-R1
/// counts (a=24, b=71, c=423, d=6 at n=524).
BehaviourProfile r1_matched_profile();

/// Items are named item-0000, item-0001, ... so generated models share ids,
/// and assigned to tracks T1..Tk round-robin.
ModelDataset generate_model(const BehaviourProfile& profile, std::string model_id,
                            std::string family, std::uint64_t seed);

/// Population values of L, Fp, RBS, r and TRIN. `table` holds expected
/// counts rounded to the nearest integer; n = n_items.
ValidityIndices expected_indices(const BehaviourProfile& profile);

}  // namespace vscreen

#endif  // VSCREEN_SYNTHETIC_HPP_
