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

#include "rankone/resample.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rankone/parallel.h"

namespace rankone {
namespace {

// Source taps for one output coordinate along one axis.
struct Tap {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double frac = 0.0;  // weight of `hi`
};

std::vector<Tap> bilinear_taps(std::size_t src, std::size_t dst) {
  std::vector<Tap> taps(dst);
  const double scale = static_cast<double>(src) / static_cast<double>(dst);
  const double last = static_cast<double>(src - 1);
  for (std::size_t k = 0; k < dst; ++k) {
    double pos = (static_cast<double>(k) + 0.5) * scale - 0.5;
    pos = std::clamp(pos, 0.0, last);
    const double fl = std::floor(pos);
    taps[k].lo = static_cast<std::size_t>(fl);
    taps[k].hi = std::min(taps[k].lo + 1, src - 1);
    taps[k].frac = pos - fl;
  }
  return taps;
}

}  // namespace

Field3 resize_bilinear(const Field3& field, std::size_t new_width, std::size_t new_height) {
  if (new_width == 0 || new_height == 0) {
    throw std::invalid_argument("resize target must be at least 1x1");
  }
  if (field.empty()) throw std::invalid_argument("resize of an empty field");
  const std::size_t w = field.width();
  const auto xt = bilinear_taps(w, new_width);
  const auto yt = bilinear_taps(field.height(), new_height);
  Field3 out(new_width, new_height);
  const auto src = field.data();
  auto dst = out.mutable_data();

  parallel_rows(new_height, [&](std::size_t y0, std::size_t y1) {
    for (std::size_t y = y0; y < y1; ++y) {
      const Tap& ty = yt[y];
      const double* r0 = src.data() + ty.lo * w * 3;
      const double* r1 = src.data() + ty.hi * w * 3;
      double* o = dst.data() + y * new_width * 3;
      for (std::size_t x = 0; x < new_width; ++x) {
        const Tap& tx = xt[x];
        for (std::size_t c = 0; c < 3; ++c) {
          const double top = r0[tx.lo * 3 + c] + tx.frac * (r0[tx.hi * 3 + c] - r0[tx.lo * 3 + c]);
          const double bot = r1[tx.lo * 3 + c] + tx.frac * (r1[tx.hi * 3 + c] - r1[tx.lo * 3 + c]);
          o[x * 3 + c] = top + ty.frac * (bot - top);
        }
      }
    }
  });
  return out;
}

ImageRGB resize_bilinear(const ImageRGB& img, std::size_t new_width, std::size_t new_height) {
  // Convex combinations stay in [0,1] up to rounding; clamp absorbs that.
  return ImageRGB::clamped(resize_bilinear(img.field(), new_width, new_height));
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian sigma must be positive, got " + std::to_string(sigma));
  }
  const auto radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(radius);
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

Field3 gaussian_blur(const Field3& field, double sigma) {
  const auto kernel = gaussian_kernel(sigma);
  if (field.empty()) throw std::invalid_argument("blur of an empty field");
  const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  const auto w = static_cast<std::ptrdiff_t>(field.width());
  const auto h = static_cast<std::ptrdiff_t>(field.height());

  // Horizontal pass.
  Field3 tmp(field.width(), field.height());
  {
    const auto src = field.data();
    auto dst = tmp.mutable_data();
    parallel_rows(field.height(), [&](std::size_t y0, std::size_t y1) {
      for (auto y = static_cast<std::ptrdiff_t>(y0); y < static_cast<std::ptrdiff_t>(y1); ++y) {
        const double* row = src.data() + y * w * 3;
        double* o = dst.data() + y * w * 3;
        for (std::ptrdiff_t x = 0; x < w; ++x) {
          double acc[3] = {0.0, 0.0, 0.0};
          for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
            const std::ptrdiff_t sx = std::clamp<std::ptrdiff_t>(x + k, 0, w - 1);
            const double wk = kernel[static_cast<std::size_t>(k + radius)];
            acc[0] += wk * row[sx * 3];
            acc[1] += wk * row[sx * 3 + 1];
            acc[2] += wk * row[sx * 3 + 2];
          }
          o[x * 3] = acc[0];
          o[x * 3 + 1] = acc[1];
          o[x * 3 + 2] = acc[2];
        }
      }
    });
  }

  // Vertical pass, accumulated row by row for cache locality.
  Field3 out(field.width(), field.height());
  {
    const auto src = tmp.data();
    auto dst = out.mutable_data();
    const std::size_t row_len = field.width() * 3;
    parallel_rows(field.height(), [&](std::size_t y0, std::size_t y1) {
      for (auto y = static_cast<std::ptrdiff_t>(y0); y < static_cast<std::ptrdiff_t>(y1); ++y) {
        double* o = dst.data() + y * static_cast<std::ptrdiff_t>(row_len);
        std::fill(o, o + row_len, 0.0);
        for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
          const std::ptrdiff_t sy = std::clamp<std::ptrdiff_t>(y + k, 0, h - 1);
          const double wk = kernel[static_cast<std::size_t>(k + radius)];
          const double* row = src.data() + sy * static_cast<std::ptrdiff_t>(row_len);
          for (std::size_t i = 0; i < row_len; ++i) o[i] += wk * row[i];
        }
      }
    });
  }
  return out;
}

ImageRGB gaussian_blur(const ImageRGB& img, double sigma) {
  return ImageRGB::clamped(gaussian_blur(img.field(), sigma));
}

}  // namespace rankone
