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

#include "rankone/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

#include "rankone/benchmark.h"
#include "rankone/image_io.h"
#include "rankone/validation.h"

namespace rankone::cli {
namespace fs = std::filesystem;
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_image_file(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".ppm" || ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// JPEG is read-only; recovered JPEGs are written as PPM.
fs::path output_name(const fs::path& name) {
  const std::string ext = lower(name.extension().string());
  if (ext == ".jpg" || ext == ".jpeg") {
    fs::path p = name;
    p.replace_extension(".ppm");
    return p;
  }
  return name;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string spectrum_str(const Spectrum& s) {
  return "(" + fixed6(s.r) + "," + fixed6(s.g) + "," + fixed6(s.b) + ")";
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw std::invalid_argument("config key '" + key + "': expected a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Job {
  fs::path input;
  fs::path output;
};

std::vector<Job> plan_recover_jobs(const CliInvocation& inv) {
  if (inv.inputs.empty()) throw std::invalid_argument("recover: no input given");
  if (!inv.output) throw std::invalid_argument("recover: -o/--output is required");
  const fs::path& out = *inv.output;
  std::vector<Job> jobs;
  const bool single_file = inv.inputs.size() == 1 && !fs::is_directory(inv.inputs[0]);
  if (single_file) {
    fs::path target = fs::is_directory(out) ? out / output_name(inv.inputs[0].filename()) : out;
    jobs.push_back({inv.inputs[0], target});
    return jobs;
  }
  for (const auto& in : inv.inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::recursive_directory_iterator(in)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        jobs.push_back({f, out / output_name(fs::relative(f, in))});
      }
    } else {
      jobs.push_back({in, out / output_name(in.filename())});
    }
  }
  return jobs;
}

void write_transmission_triple(const TransmissionField& t, const fs::path& output) {
  static constexpr const char* kSuffix[3] = {"_t_r.ppm", "_t_g.ppm", "_t_b.ppm"};
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> gray(t.pixel_count() * 3);
    const auto d = t.data();
    for (std::size_t i = 0; i < t.pixel_count(); ++i) {
      gray[3 * i] = gray[3 * i + 1] = gray[3 * i + 2] = d[3 * i + c];
    }
    fs::path p = output.parent_path() / (output.stem().string() + kSuffix[c]);
    save_image(ImageRGB(t.width(), t.height(), std::move(gray)), p);
  }
}

struct Pairing {
  std::vector<ImagePair> pairs;
  std::vector<fs::path> unpaired;
};

// `<id>_hazy.<ext>` pairs with `<id>_GT.<ext>` in the same directory.
Pairing pair_directory(const fs::path& dir) {
  std::map<std::string, fs::path> hazy;
  std::map<std::string, fs::path> clean;
  std::vector<fs::path> others;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    const std::string stem = p.stem().string();
    auto ends_with = [&](const std::string& suffix) {
      return stem.size() > suffix.size() &&
             stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (is_image_file(p) && ends_with("_hazy")) {
      hazy[stem.substr(0, stem.size() - 5)] = p;
    } else if (is_image_file(p) && ends_with("_GT")) {
      clean[stem.substr(0, stem.size() - 3)] = p;
    } else {
      others.push_back(p);
    }
  }
  Pairing result;
  for (const auto& [id, path] : hazy) {
    auto it = clean.find(id);
    if (it == clean.end()) {
      result.unpaired.push_back(path);
    } else {
      result.pairs.push_back({id, path, it->second});
      clean.erase(it);
    }
  }
  for (const auto& [id, path] : clean) result.unpaired.push_back(path);
  for (auto& p : others) result.unpaired.push_back(std::move(p));
  std::sort(result.unpaired.begin(), result.unpaired.end());
  return result;
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << contents;
  if (!f) throw std::runtime_error("write error on " + path.string());
}

}  // namespace

void apply_config_file(const fs::path& path, EffectiveSettings& s) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "omega") {
      s.pipeline.omega = parse_double(key, value);
    } else if (key == "t0") {
      s.pipeline.t_floor = parse_double(key, value);
    } else if (key == "smooth_factor") {
      s.pipeline.smooth_factor = parse_count(key, value);
    } else if (key == "smooth_sigma") {
      s.pipeline.smooth_sigma = parse_double(key, value);
    } else if (key == "ambient_fraction") {
      s.pipeline.ambient_fraction = parse_double(key, value);
    } else if (key == "threshold") {
      s.threshold = parse_double(key, value);
    } else if (key == "trials") {
      s.trials = parse_count(key, value);
    } else {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
}

EffectiveSettings resolve_settings(const CliInvocation& inv) {
  EffectiveSettings s;
  if (inv.config_file) apply_config_file(*inv.config_file, s);
  if (inv.omega) s.pipeline.omega = *inv.omega;
  if (inv.t0) s.pipeline.t_floor = *inv.t0;
  if (inv.smooth_factor) s.pipeline.smooth_factor = *inv.smooth_factor;
  if (inv.smooth_sigma) s.pipeline.smooth_sigma = *inv.smooth_sigma;
  if (inv.ambient_fraction) s.pipeline.ambient_fraction = *inv.ambient_fraction;
  if (inv.threshold) s.threshold = *inv.threshold;
  if (inv.trials) s.trials = *inv.trials;
  s.pipeline.validate();
  if (!(s.threshold >= 0.0 && s.threshold <= 1.0)) {
    throw std::invalid_argument("threshold must be in [0,1]");
  }
  if (s.trials < 3) throw std::invalid_argument("trials must be at least 3");
  for (const auto& r : inv.resolutions) parse_resolution(r);
  return s;
}

int cmd_recover(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  EffectiveSettings settings;
  std::vector<Job> jobs;
  try {
    settings = resolve_settings(inv);
    jobs = plan_recover_jobs(inv);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (jobs.empty()) {
    err << "error: no input images found\n";
    return kExitPartialFailure;
  }
  std::size_t failures = 0;
  for (const auto& job : jobs) {
    try {
      const ImageRGB img = load_image(job.input);
      const RecoveryResult result = recover(img, settings.pipeline);
      if (job.output.has_parent_path()) fs::create_directories(job.output.parent_path());
      save_image(result.recovered, job.output);
      if (inv.emit_transmission) write_transmission_triple(result.transmission, job.output);
      out << "# " << job.input.string() << " S_nu=" << spectrum_str(result.unified_spectrum)
          << " A=" << spectrum_str(result.ambient) << ' ' << settings.pipeline.to_string()
          << '\n';
    } catch (const DegenerateInputError& e) {
      ++failures;
      err << "skipped " << job.input.string() << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
      ++failures;
      err << "failed " << job.input.string() << ": " << e.what() << '\n';
    }
  }
  return failures == 0 ? kExitOk : kExitPartialFailure;
}

int cmd_validate(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  EffectiveSettings settings;
  try {
    settings = resolve_settings(inv);
    if (inv.inputs.size() != 1 || !fs::is_directory(inv.inputs[0])) {
      throw std::invalid_argument("validate: expected exactly one input directory");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const Pairing pairing = pair_directory(inv.inputs[0]);
  for (const auto& p : pairing.unpaired) {
    err << "warning: unpaired file skipped: " << p.string() << '\n';
  }
  if (pairing.pairs.empty()) {
    err << "error: no <id>_hazy/<id>_GT pairs in " << inv.inputs[0].string() << '\n';
    return kExitPartialFailure;
  }
  const ValidationResult result = validate_dataset(pairing.pairs, settings.pipeline,
                                                   settings.threshold);
  for (const auto& r : result.ground_truth.reports) {
    if (!r.error.empty()) err << "failed " << r.image_id << ": " << r.error << '\n';
  }

  std::ostringstream gt_csv;
  std::ostringstream proj_csv;
  write_energy_csv(gt_csv, result.ground_truth);
  write_energy_csv(proj_csv, result.projection);
  const auto report = inv.report ? inv.report : inv.output;
  try {
    if (report) {
      write_file(*report, gt_csv.str());
      fs::path proj_path =
          report->parent_path() / (report->stem().string() + "_projection" +
                                   report->extension().string());
      write_file(proj_path, proj_csv.str());
    } else {
      out << gt_csv.str();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitPartialFailure;
  }
  out << "# pair-inversion threshold=" << fixed6(settings.threshold)
      << " pass_fraction=" << fixed6(result.ground_truth.pass_fraction)
      << " images=" << result.ground_truth.reports.size() << '\n';
  out << "# projection threshold=" << fixed6(settings.threshold)
      << " pass_fraction=" << fixed6(result.projection.pass_fraction)
      << " images=" << result.projection.reports.size() << '\n';
  return result.ground_truth.pass_fraction >= settings.threshold ? kExitOk : kExitPartialFailure;
}

int cmd_bench(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  EffectiveSettings settings;
  std::vector<Resolution> ladder;
  try {
    settings = resolve_settings(inv);
    if (inv.resolutions.empty()) {
      ladder = default_ladder();
    } else {
      for (const auto& r : inv.resolutions) ladder.push_back(parse_resolution(r));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto records = run_benchmark(ladder, settings.trials, settings.pipeline);
  std::ostringstream csv;
  write_bench_csv(csv, records, settings.pipeline);
  const auto report = inv.report ? inv.report : inv.output;
  if (report) {
    try {
      write_file(*report, csv.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
    }
  } else {
    out << csv.str();
  }
  for (const auto& r : records) {
    if (!r.ok()) err << "warning: " << r.label << ": " << r.error << '\n';
  }
  try {
    const ScalingFit fit = fit_scaling(records);
    out << "# fit slope=" << fit.slope << " s/px intercept=" << fit.intercept
        << " s r_squared=" << fixed6(fit.r_squared) << '\n';
  } catch (const std::invalid_argument&) {
    out << "# fit unavailable (fewer than 3 distinct sizes)\n";
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scene recovery with the rank-one transmission prior", "rorecover"};
  app.require_subcommand(1);
  CliInvocation inv;
  std::vector<std::string> inputs;
  std::string output;
  std::string report;
  std::string config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Output file or directory");
    sub->add_option("--config", config, "key=value config file");
    sub->add_option("--omega", inv.omega, "Relaxation parameter in (0,1]");
    sub->add_option("--t0", inv.t0, "Lower bound of the recovery denominator");
    sub->add_option("--smooth-factor", inv.smooth_factor, "Transmission downsample divisor");
    sub->add_option("--smooth-sigma", inv.smooth_sigma, "Gaussian sigma at the small scale");
    sub->add_option("--ambient-fraction", inv.ambient_fraction,
                    "Fraction of pixels used for the ambient light");
    sub->add_option("--report", report, "Report CSV path");
  };

  CLI::App* rec = app.add_subcommand("recover", "Recover images or directories of images");
  add_common(rec);
  rec->add_option("inputs", inputs, "Input images or directories")->required();
  rec->add_flag("--emit-transmission", inv.emit_transmission,
                "Also write the smoothed transmission as three grayscale PPMs");

  CLI::App* val = app.add_subcommand("validate", "Rank-one energy statistics over image pairs");
  add_common(val);
  val->add_option("input", inputs, "Directory of <id>_hazy / <id>_GT pairs")->required();
  val->add_option("--threshold", inv.threshold, "Energy ratio threshold");

  CLI::App* bench = app.add_subcommand("bench", "Runtime scaling benchmark");
  add_common(bench);
  bench->add_option("--trials", inv.trials, "Timed runs per resolution (>= 3)");
  bench->add_option("--resolutions", inv.resolutions, "Comma-separated labels or WxH")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kExitUsage;
  }

  for (auto& s : inputs) inv.inputs.emplace_back(s);
  if (!output.empty()) inv.output = output;
  if (!report.empty()) inv.report = report;
  if (!config.empty()) inv.config_file = config;

  if (rec->parsed()) {
    inv.subcommand = Subcommand::kRecover;
    return cmd_recover(inv, out, err);
  }
  if (val->parsed()) {
    inv.subcommand = Subcommand::kValidate;
    return cmd_validate(inv, out, err);
  }
  inv.subcommand = Subcommand::kBench;
  return cmd_bench(inv, out, err);
}

}  // namespace rankone::cli
