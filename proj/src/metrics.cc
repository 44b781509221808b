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

#include "rankone/metrics.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rankone {

double mean_squared_error(const ImageRGB& a, const ImageRGB& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("image dimensions differ");
  const auto da = a.data();
  const auto db = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    sum += d * d;
  }
  return sum / static_cast<double>(da.size());
}

double psnr(const ImageRGB& a, const ImageRGB& b) {
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

Spectrum channel_stddev(const ImageRGB& img) {
  const auto d = img.data();
  const auto n = static_cast<double>(img.pixel_count());
  Spectrum mean;
  for (std::size_t i = 0; i < d.size(); ++i) mean[i % 3] += d[i];
  for (std::size_t c = 0; c < 3; ++c) mean[c] /= n;
  Spectrum var;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double e = d[i] - mean[i % 3];
    var[i % 3] += e * e;
  }
  for (std::size_t c = 0; c < 3; ++c) var[c] = std::sqrt(var[c] / n);
  return var;
}

}  // namespace rankone
