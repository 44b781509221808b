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

#ifndef RANKONE_METRICS_H_
#define RANKONE_METRICS_H_

#include "rankone/image.h"

namespace rankone {

double mean_squared_error(const ImageRGB& a, const ImageRGB& b);

// 10*log10(1/MSE) over all components. Identical images give +infinity.
// Throws std::invalid_argument on a shape mismatch.
double psnr(const ImageRGB& a, const ImageRGB& b);

// Per-channel population standard deviation; a global contrast measure.
Spectrum channel_stddev(const ImageRGB& img);

}  // namespace rankone

#endif  // RANKONE_METRICS_H_
