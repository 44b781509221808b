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

#ifndef RANKONE_PIPELINE_H_
#define RANKONE_PIPELINE_H_

#include <cstddef>
#include <stdexcept>
#include <string>

#include "rankone/image.h"

namespace rankone {

// Raised when the input carries no radiance at all (all-black image), so the
// unified spectrum is undefined.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  // Relaxation applied to the transmission in the recovery formula.
  double omega = 0.8;
  // Lower bound of the recovery denominator.
  double t_floor = 0.001;
  // Downsample divisor for transmission smoothing.
  std::size_t smooth_factor = 8;
  // Gaussian sigma in pixels at the downsampled scale.
  double smooth_sigma = 2.0;
  // Fraction of pixels (highest transmission norm) averaged into the
  // ambient light.
  double ambient_fraction = 0.001;

  // Throws std::invalid_argument naming the first violated bound.
  void validate() const;
  std::string to_string() const;
};

struct RecoveryResult {
  ImageRGB recovered;
  TransmissionField transmission;  // smoothed, in [0,1]
  Spectrum ambient;
  Spectrum unified_spectrum;
};

// Per-channel mean over all pixels.
Spectrum compute_unified_radiance(const ImageRGB& img);

// Divides by the L1 norm. Throws DegenerateInputError when the sum is not
// strictly positive.
Spectrum normalize_spectrum(const Spectrum& unified_radiance);

// <I(x), s> * s per pixel with no clamping. Exactly rank one.
TransmissionField project_transmission_raw(const ImageRGB& img,
                                           const Spectrum& unified_spectrum);

// project_transmission_raw clamped to [0,1].
TransmissionField project_transmission(const ImageRGB& img,
                                       const Spectrum& unified_spectrum);

// Bilinear downsample by cfg.smooth_factor, Gaussian blur at the small scale,
// bilinear upsample back to the input size. Output in [0,1].
TransmissionField smooth_transmission(const TransmissionField& t,
                                      const PipelineConfig& cfg);

// Number of pixels averaged for the ambient light: ceil(fraction*N), at
// least 1 and at most N.
std::size_t ambient_sample_count(std::size_t pixel_count, double fraction);

// Mean color of `img` over the pixels with the largest Euclidean norm of t;
// ties go to the lower row-major index.
Spectrum estimate_ambient_light(const ImageRGB& img, const TransmissionField& t,
                                const PipelineConfig& cfg);

// Per channel: (I - w*t*A) / max(1 - w*t, t_floor). The returned field is not
// clamped.
Field3 recover_scene_raw(const ImageRGB& img, const TransmissionField& t,
                         const Spectrum& ambient, const PipelineConfig& cfg);

// recover_scene_raw clamped to [0,1].
ImageRGB recover_scene(const ImageRGB& img, const TransmissionField& t,
                       const Spectrum& ambient, const PipelineConfig& cfg);

// Full chain: unified radiance, unified spectrum, projection, smoothing,
// ambient light, scene recovery.
RecoveryResult recover(const ImageRGB& img,
                       const PipelineConfig& cfg = PipelineConfig{});

}  // namespace rankone

#endif  // RANKONE_PIPELINE_H_
