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

#include "rankone/image.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rankone {

bool Spectrum::is_normalized(double tol) const {
  return std::abs(sum() - 1.0) <= tol;
}

Field3::Field3(std::size_t width, std::size_t height)
    : Field3(width, height, std::vector<double>(width * height * 3, 0.0)) {}

Field3::Field3(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("image dimensions must be at least 1x1");
  }
  if (data_.size() != width * height * 3) {
    throw std::invalid_argument("expected " + std::to_string(width * height * 3) +
                                " components, got " + std::to_string(data_.size()));
  }
}

ImageRGB::ImageRGB(std::size_t width, std::size_t height, std::vector<double> data)
    : ImageRGB(Field3(width, height, std::move(data))) {}

ImageRGB::ImageRGB(std::size_t width, std::size_t height, const Spectrum& value)
    : field_(width, height) {
  auto d = field_.mutable_data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = value[i % 3];
  for (std::size_t c = 0; c < 3; ++c) {
    if (!(value[c] >= 0.0 && value[c] <= 1.0)) {
      throw std::invalid_argument("image component outside [0,1]");
    }
  }
}

ImageRGB::ImageRGB(Field3 field) : field_(std::move(field)) {
  if (field_.empty()) {
    throw std::invalid_argument("image dimensions must be at least 1x1");
  }
  const auto d = field_.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    // Written so that NaN fails too.
    if (!(d[i] >= 0.0 && d[i] <= 1.0)) {
      throw std::invalid_argument("image component " + std::to_string(i) +
                                  " outside [0,1]: " + std::to_string(d[i]));
    }
  }
}

ImageRGB ImageRGB::clamped(Field3 field) { return ImageRGB(clamp_unit(std::move(field))); }

Field3 clamp_unit(Field3 field) {
  for (double& v : field.mutable_data()) {
    v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
  }
  return field;
}

}  // namespace rankone
