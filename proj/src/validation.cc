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

#include "rankone/validation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "rankone/image_io.h"

namespace rankone {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Folds one row into the upper-triangular factor R so that R^T R accumulates
// the Gram matrix of every row seen so far.
void givens_fold(Mat3& r, std::array<double, 3> v) {
  for (std::size_t k = 0; k < 3; ++k) {
    if (v[k] == 0.0) continue;
    const double a = r[k][k];
    const double h = std::hypot(a, v[k]);
    const double c = a / h;
    const double s = v[k] / h;
    r[k][k] = h;
    v[k] = 0.0;
    for (std::size_t j = k + 1; j < 3; ++j) {
      const double rj = r[k][j];
      r[k][j] = c * rj + s * v[j];
      v[j] = -s * rj + c * v[j];
    }
  }
}

// One-sided Jacobi: rotates column pairs of `m` until all columns are
// mutually orthogonal. The column norms are then the singular values.
std::array<double, 3> jacobi_column_norms(Mat3 m) {
  constexpr double kTol = 1e-15;
  constexpr int kMaxSweeps = 60;
  auto col_dot = [&](std::size_t p, std::size_t q) {
    return m[0][p] * m[0][q] + m[1][p] * m[1][q] + m[2][p] * m[2][q];
  };
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        const double alpha = col_dot(p, p);
        const double beta = col_dot(q, q);
        const double gamma = col_dot(p, q);
        if (gamma == 0.0 || std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < 3; ++i) {
          const double mp = m[i][p];
          const double mq = m[i][q];
          m[i][p] = c * mp - s * mq;
          m[i][q] = s * mp + c * mq;
        }
      }
    }
    if (!rotated) break;
  }
  std::array<double, 3> sv{};
  for (std::size_t j = 0; j < 3; ++j) sv[j] = std::sqrt(col_dot(j, j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

EnergyReport energy_from_rows(const TransmissionField& t, const std::vector<bool>* mask) {
  Mat3 r{};
  std::size_t count = 0;
  const auto d = t.data();
  for (std::size_t i = 0; i < t.pixel_count(); ++i) {
    if (mask != nullptr && !(*mask)[i]) continue;
    givens_fold(r, {d[3 * i], d[3 * i + 1], d[3 * i + 2]});
    ++count;
  }
  if (count < 3) {
    throw std::invalid_argument("rank-one energy needs at least 3 pixels, got " +
                                std::to_string(count));
  }
  EnergyReport report;
  report.valid_pixel_count = count;
  report.singular_values = jacobi_column_norms(r);
  const auto& s = report.singular_values;
  const double total = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  if (total > 0.0) {
    report.energy_ratio = s[0] * s[0] / total;
  } else {
    report.degenerate = true;
    report.energy_ratio = 0.0;
  }
  return report;
}

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::array<double, 3> singular_values_3col(std::span<const double> rows) {
  if (rows.size() % 3 != 0) throw std::invalid_argument("row data is not a multiple of 3");
  Mat3 r{};
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    givens_fold(r, {rows[i], rows[i + 1], rows[i + 2]});
  }
  return jacobi_column_norms(r);
}

EnergyReport rank_one_energy(const TransmissionField& t) { return energy_from_rows(t, nullptr); }

EnergyReport rank_one_energy(const TransmissionField& t, const std::vector<bool>& mask) {
  if (mask.size() != t.pixel_count()) throw std::invalid_argument("mask size mismatch");
  return energy_from_rows(t, &mask);
}

PairTransmission transmission_from_pair(const ImageRGB& hazy, const ImageRGB& clean,
                                        const Spectrum& ambient, double epsilon) {
  if (!hazy.same_shape(clean)) throw std::invalid_argument("hazy and clean dimensions differ");
  if (!(epsilon > 0.0)) throw std::invalid_argument("guard epsilon must be positive");
  PairTransmission out{TransmissionField(hazy.width(), hazy.height()),
                       std::vector<bool>(hazy.pixel_count(), false), 0};
  for (std::size_t i = 0; i < hazy.pixel_count(); ++i) {
    const auto h = hazy.pixel(i);
    const auto j = clean.pixel(i);
    std::array<double, 3> t{};
    bool ok = true;
    for (std::size_t c = 0; c < 3 && ok; ++c) {
      const double denom = ambient[c] - j[c];
      if (std::abs(denom) < epsilon) {
        ok = false;
      } else {
        t[c] = std::clamp((h[c] - j[c]) / denom, 0.0, 1.0);
      }
    }
    if (!ok) continue;
    auto px = out.field.mutable_pixel(i);
    std::copy(t.begin(), t.end(), px.begin());
    out.valid[i] = true;
    ++out.valid_pixel_count;
  }
  if (out.valid_pixel_count == 0) {
    throw std::invalid_argument("no pixel passes the |A - J| guard");
  }
  return out;
}

double pass_fraction(const std::vector<EnergyReport>& reports, double threshold) {
  if (reports.empty()) return 0.0;
  std::size_t pass = 0;
  for (const auto& r : reports) {
    if (r.error.empty() && r.energy_ratio >= threshold) ++pass;
  }
  return static_cast<double>(pass) / static_cast<double>(reports.size());
}

ValidationResult validate_dataset(const std::vector<ImagePair>& pairs, const PipelineConfig& cfg,
                                  double threshold, double epsilon) {
  if (pairs.empty()) throw std::invalid_argument("no image pairs to validate");
  cfg.validate();
  ValidationResult result;
  result.ground_truth.threshold = threshold;
  result.projection.threshold = threshold;
  for (const auto& pair : pairs) {
    EnergyReport gt;
    EnergyReport proj;
    try {
      const ImageRGB hazy = load_image(pair.hazy);
      const ImageRGB clean = load_image(pair.clean);
      if (!hazy.same_shape(clean)) throw std::invalid_argument("hazy and clean dimensions differ");
      const Spectrum spectrum = normalize_spectrum(compute_unified_radiance(hazy));

      try {
        const auto smoothed = smooth_transmission(project_transmission(hazy, spectrum), cfg);
        const Spectrum ambient = estimate_ambient_light(hazy, smoothed, cfg);
        const auto inverted = transmission_from_pair(hazy, clean, ambient, epsilon);
        gt = rank_one_energy(inverted.field, inverted.valid);
        gt.ambient = ambient;
      } catch (const std::exception& e) {
        gt = EnergyReport{};
        gt.error = e.what();
      }
      try {
        proj = rank_one_energy(project_transmission(hazy, spectrum));
      } catch (const std::exception& e) {
        proj = EnergyReport{};
        proj.error = e.what();
      }
    } catch (const std::exception& e) {
      gt.error = e.what();
      proj.error = e.what();
    }
    gt.image_id = pair.id;
    proj.image_id = pair.id;
    result.ground_truth.reports.push_back(std::move(gt));
    result.projection.reports.push_back(std::move(proj));
  }
  result.ground_truth.pass_fraction = pass_fraction(result.ground_truth.reports, threshold);
  result.projection.pass_fraction = pass_fraction(result.projection.reports, threshold);
  return result;
}

void write_energy_csv(std::ostream& out, const DatasetSummary& summary) {
  out << "image_id,sigma1,sigma2,sigma3,energy_ratio,valid_pixels,degenerate\n";
  std::size_t failed = 0;
  for (const auto& r : summary.reports) {
    if (!r.error.empty()) {
      ++failed;
      out << r.image_id << ",,,,,0,\n";
      continue;
    }
    out << r.image_id << ',' << format_fixed(r.singular_values[0]) << ','
        << format_fixed(r.singular_values[1]) << ',' << format_fixed(r.singular_values[2]) << ','
        << format_fixed(r.energy_ratio) << ',' << r.valid_pixel_count << ','
        << (r.degenerate ? 1 : 0) << '\n';
  }
  out << "# threshold=" << format_fixed(summary.threshold)
      << " pass_fraction=" << format_fixed(summary.pass_fraction)
      << " images=" << summary.reports.size() << " failed=" << failed << '\n';
}

}  // namespace rankone
