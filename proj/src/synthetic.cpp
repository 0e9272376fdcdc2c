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

#include "vscreen/synthetic.hpp"

#include <fmt/format.h>

#include <cmath>

#include "vscreen/rng.hpp"

namespace vscreen {

std::string_view to_string(BehaviourKind k) {
  switch (k) {
    case BehaviourKind::kDiscriminating:
      return "discriminating";
    case BehaviourKind::kBlanket:
      return "blanket";
    case BehaviourKind::kInverted:
      return "inverted";
    case BehaviourKind::kAmbiguous:
      return "ambiguous";
  }
  return "ambiguous";
}

BehaviourKind parse_behaviour_kind(std::string_view text) {
  if (text == "discriminating") return BehaviourKind::kDiscriminating;
  if (text == "blanket") return BehaviourKind::kBlanket;
  if (text == "inverted") return BehaviourKind::kInverted;
  if (text == "ambiguous") return BehaviourKind::kAmbiguous;
  throw Error(fmt::format("unknown behaviour kind '{}'", text));
}

void BehaviourProfile::Validate() const {
  for (double p : {accuracy, p_keep_given_correct, p_keep_given_incorrect, p_bet_given_keep,
                   p_bet_given_withdraw}) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(fmt::format("probability {} outside [0,1]", p));
  }
  if (n_items < 1) throw Error("n_items must be at least 1");
  if (tracks < 1 || tracks > n_items) throw Error("tracks must lie in [1, n_items]");
  const double kc = p_keep_given_correct;
  const double ki = p_keep_given_incorrect;
  bool ok = true;
  switch (kind) {
    case BehaviourKind::kDiscriminating:
      ok = kc > ki;
      break;
    case BehaviourKind::kInverted:
      ok = kc < ki;
      break;
    case BehaviourKind::kBlanket:
      ok = kc >= 0.95 && ki >= 0.95;
      break;
    case BehaviourKind::kAmbiguous:
      ok = std::abs(kc - ki) <= 0.05;
      break;
  }
  if (!ok) {
    throw Error(fmt::format("keep probabilities ({}, {}) inconsistent with kind '{}'", kc, ki,
                            to_string(kind)));
  }
}

BehaviourProfile r1_matched_profile() {
  BehaviourProfile p;
  p.kind = BehaviourKind::kInverted;
  p.accuracy = 447.0 / 524.0;
  p.p_keep_given_correct = 24.0 / 447.0;
  p.p_keep_given_incorrect = 71.0 / 77.0;
  p.p_bet_given_keep = 0.7;
  p.p_bet_given_withdraw = 0.3;
  p.n_items = 524;
  return p;
}

ModelDataset generate_model(const BehaviourProfile& profile, std::string model_id,
                            std::string family, std::uint64_t seed) {
  profile.Validate();
  Substream rng(seed, streams::kSynthetic, stable_hash(model_id));
  ModelDataset ds{model_id, family, {}};
  ds.items.reserve(static_cast<std::size_t>(profile.n_items));
  for (std::int64_t i = 0; i < profile.n_items; ++i) {
    ItemRecord rec;
    rec.model_id = model_id;
    rec.family = family;
    rec.track = fmt::format("T{}", i % profile.tracks + 1);
    rec.item_id = fmt::format("item-{:04d}", i);
    rec.correct = rng.Bernoulli(profile.accuracy);
    rec.keep = rng.Bernoulli(rec.correct ? profile.p_keep_given_correct
                                         : profile.p_keep_given_incorrect);
    rec.bet = rng.Bernoulli(rec.keep ? profile.p_bet_given_keep : profile.p_bet_given_withdraw);
    ds.items.push_back(std::move(rec));
  }
  return ds;
}

ValidityIndices expected_indices(const BehaviourProfile& profile) {
  profile.Validate();
  const double acc = profile.accuracy;
  const double kc = profile.p_keep_given_correct;
  const double ki = profile.p_keep_given_incorrect;
  // Cell probabilities.
  const double pa = acc * kc;
  const double pb = (1.0 - acc) * ki;
  const double pc = acc * (1.0 - kc);
  const double pd = (1.0 - acc) * (1.0 - ki);
  const double n = static_cast<double>(profile.n_items);

  ValidityIndices v;
  v.n = profile.n_items;
  v.table = {std::llround(pa * n), std::llround(pb * n), std::llround(pc * n),
             std::llround(pd * n)};
  v.min_cell = v.table.min_cell();
  v.L = pa + pb;
  if (acc > 0.0) v.Fp = 1.0 - kc;
  if (acc > 0.0 && acc < 1.0) v.RBS = (1.0 - kc) - (1.0 - ki);
  const double denom = (pa + pb) * (pc + pd) * (pa + pc) * (pb + pd);
  if (denom > 0.0) v.r = (pa * pd - pb * pc) / std::sqrt(denom);
  v.TRIN = v.L * (1.0 - profile.p_bet_given_keep) + (1.0 - v.L) * profile.p_bet_given_withdraw;
  return v;
}

}  // namespace vscreen
