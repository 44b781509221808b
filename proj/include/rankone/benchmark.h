// Copyright 2026 The rankone Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANKONE_BENCHMARK_H_
#define RANKONE_BENCHMARK_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rankone/image.h"
#include "rankone/pipeline.h"

namespace rankone {

struct Resolution {
  std::string label;
  std::size_t width = 0;
  std::size_t height = 0;
};

struct BenchRecord {
  std::string label;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t trials = 0;
  double median_seconds = 0.0;
  double min_seconds = 0.0;
  std::string error;  // set when the resolution could not be run

  std::size_t pixels() const { return width * height; }
  bool ok() const { return error.empty(); }
};

struct ScalingFit {
  double slope = 0.0;      // seconds per pixel
  double intercept = 0.0;  // seconds
  double r_squared = 0.0;
};

// 360p, 480p, 720p, 1080p, 2k, 4k.
std::vector<Resolution> default_ladder();

// Looks up a ladder label ("1080p") or parses "WIDTHxHEIGHT". Throws
// std::invalid_argument for anything else.
Resolution parse_resolution(std::string_view token);

// Deterministic pseudo-random image: a smooth color gradient plus
// SplitMix64 noise, so results are identical on every platform. Never
// all-black.
ImageRGB generate_test_image(std::size_t width, std::size_t height,
                             std::uint64_t seed);

// Times `recover` at each resolution: one untimed warm-up, then `trials`
// timed runs. Image generation happens outside the timed region. A
// resolution that cannot be allocated gets a record with `error` set.
// Throws std::invalid_argument when trials < 3.
std::vector<BenchRecord> run_benchmark(const std::vector<Resolution>& resolutions,
                                       std::size_t trials,
                                       const PipelineConfig& cfg,
                                       std::uint64_t seed = 0);

// Ordinary least squares of median_seconds against pixel count over the
// successful records. Throws std::invalid_argument unless at least three
// distinct pixel counts are present.
ScalingFit fit_scaling(const std::vector<BenchRecord>& records);

// Benchmark CSV: header, one row per record, then `#` summary lines.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records,
                     const PipelineConfig& cfg);

}  // namespace rankone

#endif  // RANKONE_BENCHMARK_H_
