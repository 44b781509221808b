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

#ifndef RANKONE_CLI_H_
#define RANKONE_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankone/pipeline.h"

namespace rankone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Subcommand { kRecover, kValidate, kBench };

struct CliInvocation {
  Subcommand subcommand = Subcommand::kRecover;
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> config_file;
  std::optional<std::filesystem::path> report;

  // Flag overrides; unset fields fall back to the config file, then defaults.
  std::optional<double> omega;
  std::optional<double> t0;
  std::optional<std::size_t> smooth_factor;
  std::optional<double> smooth_sigma;
  std::optional<double> ambient_fraction;
  std::optional<double> threshold;
  std::optional<std::size_t> trials;
  std::vector<std::string> resolutions;

  bool emit_transmission = false;
};

// Settings after applying defaults, the config file and flags, in that
// order of precedence.
struct EffectiveSettings {
  PipelineConfig pipeline;
  double threshold = 0.90;
  std::size_t trials = 5;
};

// Parses `key = value` lines ('#' starts a comment). Keys: omega, t0,
// smooth_factor, smooth_sigma, ambient_fraction, threshold, trials.
// Throws std::invalid_argument on an unknown key or malformed value.
void apply_config_file(const std::filesystem::path& path, EffectiveSettings& settings);

// Resolves and validates settings. Throws std::invalid_argument.
EffectiveSettings resolve_settings(const CliInvocation& inv);

int cmd_recover(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cmd_validate(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cmd_bench(const CliInvocation& inv, std::ostream& out, std::ostream& err);

// Parses argv and dispatches. Returns a process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankone::cli

#endif  // RANKONE_CLI_H_
