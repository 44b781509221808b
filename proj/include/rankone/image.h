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

#ifndef RANKONE_IMAGE_H_
#define RANKONE_IMAGE_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace rankone {

// A color triple. Used for the unified radiance, the unified spectrum and
// the ambient light. Components are finite and nonnegative.
struct Spectrum {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  double operator[](std::size_t c) const { return c == 0 ? r : (c == 1 ? g : b); }
  double& operator[](std::size_t c) { return c == 0 ? r : (c == 1 ? g : b); }

  double sum() const { return r + g + b; }

  // True when r+g+b is within `tol` of 1.
  bool is_normalized(double tol = 1e-6) const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

// Dense row-major W x H field of 3-vectors with no range constraint.
// Shared storage for ImageRGB and TransmissionField.
class Field3 {
 public:
  Field3() = default;
  // Zero-filled field. Throws std::invalid_argument on a zero dimension.
  Field3(std::size_t width, std::size_t height);
  // Throws std::invalid_argument unless data.size() == width*height*3.
  Field3(std::size_t width, std::size_t height, std::vector<double> data);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t pixel_count() const { return width_ * height_; }
  bool empty() const { return data_.empty(); }

  std::span<const double> data() const { return data_; }
  std::span<double> mutable_data() { return data_; }

  std::span<const double, 3> pixel(std::size_t index) const {
    return std::span<const double, 3>(data_.data() + 3 * index, 3);
  }
  std::span<const double, 3> pixel(std::size_t x, std::size_t y) const {
    return pixel(y * width_ + x);
  }
  std::span<double, 3> mutable_pixel(std::size_t index) {
    return std::span<double, 3>(data_.data() + 3 * index, 3);
  }

  bool same_shape(const Field3& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

// H x W x 3 image with every component finite and in [0,1]. Channel order
// is R,G,B. The range invariant is checked at construction.
class ImageRGB {
 public:
  ImageRGB() = default;
  // Throws std::invalid_argument on zero dimensions or out-of-range data.
  ImageRGB(std::size_t width, std::size_t height, std::vector<double> data);
  // Constant image.
  ImageRGB(std::size_t width, std::size_t height, const Spectrum& value);
  explicit ImageRGB(Field3 field);

  // Clamps every component to [0,1]; NaN maps to 0.
  static ImageRGB clamped(Field3 field);

  std::size_t width() const { return field_.width(); }
  std::size_t height() const { return field_.height(); }
  std::size_t pixel_count() const { return field_.pixel_count(); }
  bool empty() const { return field_.empty(); }

  std::span<const double> data() const { return field_.data(); }
  std::span<const double, 3> pixel(std::size_t index) const { return field_.pixel(index); }
  std::span<const double, 3> pixel(std::size_t x, std::size_t y) const {
    return field_.pixel(x, y);
  }
  const Field3& field() const { return field_; }

  bool same_shape(const ImageRGB& o) const { return field_.same_shape(o.field_); }

 private:
  Field3 field_;
};

// Per-pixel transmission vectors. The raw projection output may exceed 1;
// the pipeline clamps to [0,1] before smoothing.
using TransmissionField = Field3;

// Returns a copy of `field` with components clamped to [0,1].
Field3 clamp_unit(Field3 field);

}  // namespace rankone

#endif  // RANKONE_IMAGE_H_
