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

// Resampling kernels. `omp::` versions run the resample loop in parallel;
// `serial::` versions are the straightforward reference the tests and the
// benchmark compare them against. Draw b always comes from
// Substream(seed, stream, b), so both produce identical bits.

#ifndef VSCREEN_KERNELS_HPP_
#define VSCREEN_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "vscreen/core.hpp"

namespace vscreen::kernels {

/// Cell code of one item: 0 = a, 1 = b, 2 = c, 3 = d.
std::uint8_t cell_code(bool keep, bool correct);

namespace serial {

/// RBS of each item-level bootstrap resample; NaN where undefined.
std::vector<double> bootstrap_rbs(std::span<const ItemRecord> items, std::int64_t resamples,
                                  std::uint64_t seed);

/// Mean of each resample (with replacement, same size) of `values`.
std::vector<double> resample_means(std::span<const double> values, std::int64_t resamples,
                                   std::uint64_t seed, std::uint64_t stream);

}  // namespace serial

namespace omp {

std::vector<double> bootstrap_rbs(std::span<const std::uint8_t> cells, std::int64_t resamples,
                                  std::uint64_t seed);

std::vector<double> resample_means(std::span<const double> values, std::int64_t resamples,
                                   std::uint64_t seed, std::uint64_t stream);

}  // namespace omp

}  // namespace vscreen::kernels

#endif  // VSCREEN_KERNELS_HPP_
