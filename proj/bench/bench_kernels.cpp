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

// Times the serial reference kernels against the OpenMP kernels and checks
// that both return identical draws.
//
//   bench_kernels [resamples] [repeats]

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <vector>

#include "vscreen/kernels.hpp"
#include "vscreen/parallel.hpp"
#include "vscreen/rng.hpp"
#include "vscreen/splithalf.hpp"
#include "vscreen/synthetic.hpp"

namespace {

using namespace vscreen;

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, s);
  }
  return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, double serial_s, double omp_s, bool identical) {
  fmt::print("{:<28} serial {:>9.4f}s   omp {:>9.4f}s   speedup {:>5.2f}x   identical {}\n", name,
             serial_s, omp_s, serial_s / omp_s, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t resamples = argc > 1 ? std::atoll(argv[1]) : 10000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  fmt::print("threads {}, resamples {}, best of {}\n", max_threads(), resamples, repeats);

  const auto ds = generate_model(BehaviourProfile{}, "bench", "f", 1);
  std::vector<std::uint8_t> cells;
  for (const auto& it : ds.items) cells.push_back(kernels::cell_code(it.keep, it.correct));

  std::vector<double> s, p;
  const double ts = best_of(repeats, [&] { s = kernels::serial::bootstrap_rbs(ds.items, resamples, 7); });
  const double tp = best_of(repeats, [&] { p = kernels::omp::bootstrap_rbs(cells, resamples, 7); });
  report("bootstrap_rbs (n=524)", ts, tp, same_bits(s, p));

  std::vector<double> values;
  for (int i = 0; i < 14; ++i) values.push_back(0.55 + 0.01 * i);
  const std::int64_t mean_resamples = resamples * 10;
  const double ms = best_of(repeats, [&] {
    s = kernels::serial::resample_means(values, mean_resamples, 7, streams::kTierBootstrap);
  });
  const double mp = best_of(repeats, [&] {
    p = kernels::omp::resample_means(values, mean_resamples, 7, streams::kTierBootstrap);
  });
  report("resample_means (n=14)", ms, mp, same_bits(s, p));

  std::vector<ModelDataset> cohort;
  for (int i = 0; i < 10; ++i) cohort.push_back(generate_model({}, fmt::format("d{}", i), "f", 1));
  for (int i = 0; i < 2; ++i) {
    cohort.push_back(generate_model(r1_matched_profile(), fmt::format("r{}", i), "f", 1));
  }
  std::vector<std::optional<double>> ds_serial, ds_omp;
  const ScreenConfig cfg;
  const double hs = best_of(repeats, [&] {
    ds_serial = split_half_d(cohort, cfg, 1000, 7, Execution::kSerial);
  });
  const double hp = best_of(repeats, [&] {
    ds_omp = split_half_d(cohort, cfg, 1000, 7, Execution::kParallel);
  });
  report("split_half_d (12 x 524)", hs, hp, ds_serial == ds_omp);
  return 0;
}
