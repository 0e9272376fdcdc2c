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

// Seeded random substreams. Every resample / split / generated model draws
// from its own engine keyed by (seed, stream, index), so results do not
// depend on how the work is divided between threads.

#ifndef VSCREEN_RNG_HPP_
#define VSCREEN_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace vscreen {

// Stream tags. Distinct procedures never share draws for the same seed.
namespace streams {
inline constexpr std::uint64_t kRbsBootstrap = 0x01;
inline constexpr std::uint64_t kTierBootstrap = 0x02;
inline constexpr std::uint64_t kMonotonicity = 0x03;
inline constexpr std::uint64_t kSplitHalf = 0x04;
inline constexpr std::uint64_t kSynthetic = 0x05;
}  // namespace streams

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// FNV-1a, used to turn identifiers (tier names, model ids) into stream keys.
std::uint64_t stable_hash(std::string_view text);

class Substream {
 public:
  Substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : engine_(derive_seed(seed, stream, index)) {}

  std::uint64_t Next() { return engine_(); }

  /// Uniform integer in [0, bound). Portable across standard libraries,
  /// unlike std::uniform_int_distribution.
  std::size_t Below(std::size_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vscreen

#endif  // VSCREEN_RNG_HPP_
