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

#ifndef RANKONE_VALIDATION_H_
#define RANKONE_VALIDATION_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankone/image.h"
#include "rankone/pipeline.h"

namespace rankone {

inline constexpr double kDefaultEnergyThreshold = 0.90;
inline constexpr double kDefaultGuardEpsilon = 0.02;

// Rank-one energy of a stacked N x 3 transmission matrix.
struct EnergyReport {
  std::string image_id;
  std::array<double, 3> singular_values{};  // descending
  double energy_ratio = 0.0;  // s1^2 / (s1^2 + s2^2 + s3^2), 0 when degenerate
  std::size_t valid_pixel_count = 0;
  bool degenerate = false;  // zero matrix
  std::optional<Spectrum> ambient;  // ambient light used for pair inversion
  std::string error;  // non-empty when this image failed
};

struct DatasetSummary {
  std::vector<EnergyReport> reports;
  double threshold = kDefaultEnergyThreshold;
  double pass_fraction = 0.0;
};

// Singular values of an N x 3 row-major matrix, descending. Rows are folded
// one at a time into a 3x3 triangular factor with Givens rotations, then the
// factor's Gram matrix is diagonalized by one-sided Jacobi sweeps. One pass
// over the data and O(1) extra memory.
std::array<double, 3> singular_values_3col(std::span<const double> rows);

// Energy report of every pixel of `t`. Throws std::invalid_argument when t
// has fewer than 3 pixels.
EnergyReport rank_one_energy(const TransmissionField& t);

// Same, over the pixels flagged true in `mask` (mask.size() == pixel count).
EnergyReport rank_one_energy(const TransmissionField& t,
                             const std::vector<bool>& mask);

// Transmission obtained by inverting the image formation model with a known
// clean image and ambient light.
struct PairTransmission {
  TransmissionField field;   // invalid pixels hold zeros
  std::vector<bool> valid;   // per pixel
  std::size_t valid_pixel_count = 0;
};

// t^c = (I^c - J^c) / (A^c - J^c), clamped to [0,1], where |A^c - J^c| >=
// epsilon; a pixel is valid only when all three channels pass the guard.
// Throws std::invalid_argument on a shape mismatch, non-positive epsilon or
// when no pixel is valid.
PairTransmission transmission_from_pair(const ImageRGB& hazy,
                                        const ImageRGB& clean,
                                        const Spectrum& ambient,
                                        double epsilon = kDefaultGuardEpsilon);

// Pass fraction of `reports` at `threshold`. Failed images count as misses.
double pass_fraction(const std::vector<EnergyReport>& reports, double threshold);

struct ImagePair {
  std::string id;
  std::filesystem::path hazy;
  std::filesystem::path clean;
};

struct ValidationResult {
  DatasetSummary ground_truth;  // pair inversion
  DatasetSummary projection;    // project_transmission on the hazy image
};

// Runs both validation routes on every pair. Per-image failures are stored
// in the report's `error` field. Report order follows `pairs`.
ValidationResult validate_dataset(const std::vector<ImagePair>& pairs,
                                  const PipelineConfig& cfg,
                                  double threshold = kDefaultEnergyThreshold,
                                  double epsilon = kDefaultGuardEpsilon);

// Report CSV: header, one row per image, then a `#` summary line.
void write_energy_csv(std::ostream& out, const DatasetSummary& summary);

}  // namespace rankone

#endif  // RANKONE_VALIDATION_H_
