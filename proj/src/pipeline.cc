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

#include "rankone/pipeline.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "rankone/parallel.h"
#include "rankone/resample.h"

namespace rankone {

void PipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(omega > 0.0 && omega <= 1.0)) fail("omega must be in (0,1], got " + std::to_string(omega));
  if (!(t_floor > 0.0 && t_floor < 1.0)) fail("t0 must be in (0,1), got " + std::to_string(t_floor));
  if (smooth_factor < 1) fail("smooth factor must be >= 1");
  if (!(smooth_sigma > 0.0) || !std::isfinite(smooth_sigma)) {
    fail("smooth sigma must be positive, got " + std::to_string(smooth_sigma));
  }
  if (!(ambient_fraction > 0.0 && ambient_fraction <= 1.0)) {
    fail("ambient fraction must be in (0,1], got " + std::to_string(ambient_fraction));
  }
}

std::string PipelineConfig::to_string() const {
  std::ostringstream os;
  os << "omega=" << omega << " t0=" << t_floor << " smooth_factor=" << smooth_factor
     << " smooth_sigma=" << smooth_sigma << " ambient_fraction=" << ambient_fraction;
  return os.str();
}

Spectrum compute_unified_radiance(const ImageRGB& img) {
  // Row sums in parallel, then a fixed-order fold, so the result does not
  // depend on the thread count.
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  std::vector<std::array<double, 3>> rows(h);
  const auto d = img.data();
  parallel_rows(h, [&](std::size_t y0, std::size_t y1) {
    for (std::size_t y = y0; y < y1; ++y) {
      std::array<double, 3> s{};
      const double* p = d.data() + y * w * 3;
      for (std::size_t x = 0; x < w; ++x) {
        s[0] += p[3 * x];
        s[1] += p[3 * x + 1];
        s[2] += p[3 * x + 2];
      }
      rows[y] = s;
    }
  });
  Spectrum total;
  for (const auto& s : rows) {
    total.r += s[0];
    total.g += s[1];
    total.b += s[2];
  }
  const auto n = static_cast<double>(img.pixel_count());
  return {total.r / n, total.g / n, total.b / n};
}

Spectrum normalize_spectrum(const Spectrum& s) {
  for (std::size_t c = 0; c < 3; ++c) {
    if (!(s[c] >= 0.0) || !std::isfinite(s[c])) {
      throw std::invalid_argument("unified radiance components must be finite and nonnegative");
    }
  }
  const double l1 = s.sum();
  if (!(l1 > 0.0)) {
    throw DegenerateInputError(
        "degenerate input: zero unified radiance (all-black image), spectrum undefined");
  }
  return {s.r / l1, s.g / l1, s.b / l1};
}

TransmissionField project_transmission_raw(const ImageRGB& img, const Spectrum& s) {
  TransmissionField t(img.width(), img.height());
  const auto src = img.data();
  auto dst = t.mutable_data();
  const std::size_t w = img.width();
  parallel_rows(img.height(), [&](std::size_t y0, std::size_t y1) {
    for (std::size_t i = y0 * w; i < y1 * w; ++i) {
      const double* p = src.data() + 3 * i;
      const double coeff = p[0] * s.r + p[1] * s.g + p[2] * s.b;
      double* o = dst.data() + 3 * i;
      o[0] = coeff * s.r;
      o[1] = coeff * s.g;
      o[2] = coeff * s.b;
    }
  });
  return t;
}

TransmissionField project_transmission(const ImageRGB& img, const Spectrum& s) {
  return clamp_unit(project_transmission_raw(img, s));
}

TransmissionField smooth_transmission(const TransmissionField& t, const PipelineConfig& cfg) {
  const std::size_t f = std::max<std::size_t>(1, cfg.smooth_factor);
  const std::size_t sw = std::max<std::size_t>(1, t.width() / f);
  const std::size_t sh = std::max<std::size_t>(1, t.height() / f);
  Field3 small = resize_bilinear(t, sw, sh);
  small = gaussian_blur(small, cfg.smooth_sigma);
  return clamp_unit(resize_bilinear(small, t.width(), t.height()));
}

std::size_t ambient_sample_count(std::size_t pixel_count, double fraction) {
  const double k = std::ceil(fraction * static_cast<double>(pixel_count));
  if (!(k >= 1.0)) return std::min<std::size_t>(1, pixel_count);
  return std::min(pixel_count, static_cast<std::size_t>(k));
}

Spectrum estimate_ambient_light(const ImageRGB& img, const TransmissionField& t,
                                const PipelineConfig& cfg) {
  if (!img.field().same_shape(t)) {
    throw std::invalid_argument("image and transmission dimensions differ");
  }
  const std::size_t n = img.pixel_count();
  std::vector<double> norm(n);
  const auto td = t.data();
  const std::size_t w = t.width();
  parallel_rows(t.height(), [&](std::size_t y0, std::size_t y1) {
    for (std::size_t i = y0 * w; i < y1 * w; ++i) {
      const double* p = td.data() + 3 * i;
      norm[i] = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    }
  });

  const std::size_t k = ambient_sample_count(n, cfg.ambient_fraction);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Strict total order: larger norm first, then lower index.
  auto before = [&](std::size_t a, std::size_t b) {
    return norm[a] != norm[b] ? norm[a] > norm[b] : a < b;
  };
  if (k < n) std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), before);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());

  Spectrum a;
  for (std::size_t i : idx) {
    const auto p = img.pixel(i);
    a.r += p[0];
    a.g += p[1];
    a.b += p[2];
  }
  const auto kd = static_cast<double>(k);
  return {a.r / kd, a.g / kd, a.b / kd};
}

Field3 recover_scene_raw(const ImageRGB& img, const TransmissionField& t, const Spectrum& a,
                         const PipelineConfig& cfg) {
  if (!img.field().same_shape(t)) {
    throw std::invalid_argument("image and transmission dimensions differ");
  }
  cfg.validate();
  Field3 out(img.width(), img.height());
  const auto src = img.data();
  const auto td = t.data();
  auto dst = out.mutable_data();
  const std::size_t w = img.width();
  const double omega = cfg.omega;
  const double floor = cfg.t_floor;
  parallel_rows(img.height(), [&](std::size_t y0, std::size_t y1) {
    for (std::size_t j = y0 * w * 3; j < y1 * w * 3; ++j) {
      const double wt = omega * td[j];
      dst[j] = (src[j] - wt * a[j % 3]) / std::max(1.0 - wt, floor);
    }
  });
  return out;
}

ImageRGB recover_scene(const ImageRGB& img, const TransmissionField& t, const Spectrum& a,
                       const PipelineConfig& cfg) {
  return ImageRGB::clamped(recover_scene_raw(img, t, a, cfg));
}

RecoveryResult recover(const ImageRGB& img, const PipelineConfig& cfg) {
  cfg.validate();
  if (img.empty()) throw std::invalid_argument("empty image");
  RecoveryResult result;
  result.unified_spectrum = normalize_spectrum(compute_unified_radiance(img));
  TransmissionField raw = project_transmission(img, result.unified_spectrum);
  result.transmission = smooth_transmission(raw, cfg);
  result.ambient = estimate_ambient_light(img, result.transmission, cfg);
  result.recovered = recover_scene(img, result.transmission, result.ambient, cfg);
  return result;
}

}  // namespace rankone
