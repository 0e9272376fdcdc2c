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

#ifndef VSCREEN_PARALLEL_HPP_
#define VSCREEN_PARALLEL_HPP_

namespace vscreen {

/// Selects the OpenMP kernel or the serial reference loop. Both produce
/// bit-identical results for the same seed.
enum class Execution { kSerial, kParallel };

/// Thread count the parallel kernels will use (1 without OpenMP).
int max_threads();

/// Overrides the OpenMP thread count; no-op without OpenMP.
void set_threads(int n);

}  // namespace vscreen

#endif  // VSCREEN_PARALLEL_HPP_
