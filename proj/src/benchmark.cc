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

#include "rankone/benchmark.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <new>
#include <ostream>
#include <set>
#include <stdexcept>

#include "rankone/parallel.h"

namespace rankone {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform in [0,1) from the top 53 bits.
double unit_double(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

std::vector<Resolution> default_ladder() {
  return {{"360p", 640, 360},    {"480p", 854, 480},    {"720p", 1280, 720},
          {"1080p", 1920, 1080}, {"2k", 2560, 1440},    {"4k", 3840, 2160}};
}

Resolution parse_resolution(std::string_view token) {
  for (const auto& r : default_ladder()) {
    if (r.label == token) return r;
  }
  const auto x = token.find('x');
  if (x != std::string_view::npos && x > 0 && x + 1 < token.size()) {
    std::size_t w = 0;
    std::size_t h = 0;
    bool ok = true;
    for (std::size_t i = 0; i < token.size() && ok; ++i) {
      if (i == x) continue;
      const char ch = token[i];
      if (ch < '0' || ch > '9') {
        ok = false;
        break;
      }
      std::size_t& dst = i < x ? w : h;
      dst = dst * 10 + static_cast<std::size_t>(ch - '0');
      if (dst > 100000) ok = false;
    }
    if (ok && w > 0 && h > 0) return {std::string(token), w, h};
  }
  throw std::invalid_argument("unknown resolution '" + std::string(token) +
                              "' (use 360p..4k or WIDTHxHEIGHT)");
}

ImageRGB generate_test_image(std::size_t width, std::size_t height, std::uint64_t seed) {
  // Smooth per-channel gradient blended with white noise, mapped into
  // [0.05, 0.95]. Pixels are generated in row-major order from one stream.
  std::uint64_t state = seed;
  std::vector<double> data(width * height * 3);
  const double fw = static_cast<double>(width);
  const double fh = static_cast<double>(height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double u = (static_cast<double>(x) + 0.5) / fw;
      const double v = (static_cast<double>(y) + 0.5) / fh;
      const double base[3] = {u, v, 0.5 * (u + v)};
      double* p = data.data() + 3 * (y * width + x);
      for (std::size_t c = 0; c < 3; ++c) {
        p[c] = 0.05 + 0.9 * (0.5 * base[c] + 0.5 * unit_double(state));
      }
    }
  }
  return ImageRGB(width, height, std::move(data));
}

std::vector<BenchRecord> run_benchmark(const std::vector<Resolution>& resolutions,
                                       std::size_t trials, const PipelineConfig& cfg,
                                       std::uint64_t seed) {
  if (trials < 3) throw std::invalid_argument("benchmark needs at least 3 trials");
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  for (const auto& res : resolutions) {
    BenchRecord rec{res.label, res.width, res.height, trials, 0.0, 0.0, {}};
    try {
      const ImageRGB img = generate_test_image(res.width, res.height, seed);
      recover(img, cfg);  // warm-up
      std::vector<double> seconds;
      seconds.reserve(trials);
      for (std::size_t i = 0; i < trials; ++i) {
        const auto start = Clock::now();
        const RecoveryResult out = recover(img, cfg);
        const auto stop = Clock::now();
        seconds.push_back(std::chrono::duration<double>(stop - start).count());
      }
      rec.median_seconds = median_of(seconds);
      rec.min_seconds = *std::min_element(seconds.begin(), seconds.end());
    } catch (const std::bad_alloc&) {
      rec.error = "allocation failed";
    }
    records.push_back(std::move(rec));
  }
  return records;
}

ScalingFit fit_scaling(const std::vector<BenchRecord>& records) {
  std::vector<std::pair<double, double>> pts;
  std::set<std::size_t> sizes;
  for (const auto& r : records) {
    if (!r.ok()) continue;
    pts.emplace_back(static_cast<double>(r.pixels()), r.median_seconds);
    sizes.insert(r.pixels());
  }
  if (sizes.size() < 3) {
    throw std::invalid_argument("scaling fit needs at least 3 distinct pixel counts");
  }
  // Sorted so the floating-point sums do not depend on record order.
  std::sort(pts.begin(), pts.end());
  const auto n = static_cast<double>(pts.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : pts) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records,
                     const PipelineConfig& cfg) {
  out << "label,width,height,pixels,trials,median_s,min_s\n";
  for (const auto& r : records) {
    out << r.label << ',' << r.width << ',' << r.height << ',' << r.pixels() << ',' << r.trials
        << ',';
    if (r.ok()) {
      out << fmt("%.9f", r.median_seconds) << ',' << fmt("%.9f", r.min_seconds);
    } else {
      out << ',';
    }
    out << '\n';
  }
  out << "# threads=" << thread_count() << " config: " << cfg.to_string() << '\n';
  try {
    const ScalingFit fit = fit_scaling(records);
    out << "# fit slope=" << fmt("%.6e", fit.slope) << " intercept=" << fmt("%.6e", fit.intercept)
        << " r_squared=" << fmt("%.6f", fit.r_squared) << '\n';
  } catch (const std::invalid_argument&) {
    out << "# fit unavailable (fewer than 3 distinct sizes)\n";
  }
}

}  // namespace rankone
