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

#ifndef RANKONE_RESAMPLE_H_
#define RANKONE_RESAMPLE_H_

#include <cstddef>
#include <vector>

#include "rankone/image.h"

namespace rankone {

// Bilinear resampling with pixel-center alignment: output sample k reads
// source coordinate (k + 0.5) * (src / dst) - 0.5, clamped to the edge.
// Throws std::invalid_argument when a new dimension is zero.
Field3 resize_bilinear(const Field3& field, std::size_t new_width,
                       std::size_t new_height);
ImageRGB resize_bilinear(const ImageRGB& img, std::size_t new_width,
                         std::size_t new_height);

// Normalized 1-D Gaussian taps for offsets -radius..radius, with
// radius = ceil(3 * sigma).
std::vector<double> gaussian_kernel(double sigma);

// Separable Gaussian blur with clamp-to-edge boundaries. Constant inputs
// are preserved. Throws std::invalid_argument unless sigma > 0.
Field3 gaussian_blur(const Field3& field, double sigma);
ImageRGB gaussian_blur(const ImageRGB& img, double sigma);

}  // namespace rankone

#endif  // RANKONE_RESAMPLE_H_
