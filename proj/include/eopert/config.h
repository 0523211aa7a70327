//
// Copyright 2026 The eopert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef EOPERT_CONFIG_H_
#define EOPERT_CONFIG_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eopert/core_model.h"
#include "eopert/perturb.h"

namespace eopert {

// Named parameter bundle from the published simulation tables. Base rates
// are not part of a preset and must be supplied separately.
struct Preset {
  std::string_view name;
  double alpha1;
  double beta1;
  double alpha2;
  double beta2;
  ScheduleKind schedule;
};

std::span<const Preset> AllPresets();
std::optional<Preset> FindPreset(std::string_view name);

// Parses "start:stop:step" (inclusive of stop up to 1e-9) or a comma list.
// Throws ConfigError.
std::vector<double> ParseGrid(std::string_view text);
std::vector<double> GridPoints(double start, double stop, double step);

// Flat `key = value` text; '#' starts a comment. Throws ConfigError on
// syntax errors or repeated keys.
std::map<std::string, std::string> ParseKeyValues(std::istream& in);

struct SweepConfig {
  ProblemInstance instance;
  ScheduleKind schedule = ScheduleKind::kEqual;
  std::vector<double> grid;
  std::string output;  // empty: stdout
};

// Recognized keys: preset, base, alpha1, beta1, alpha2, beta2, schedule,
// grid_start, grid_stop, grid_step, output. `base` is four comma-separated
// probabilities in (1,0), (1,1), (-1,0), (-1,1) order, or `balanced`.
// Unknown keys are errors. Validates the instance and the grid.
SweepConfig BuildSweepConfig(const std::map<std::string, std::string>& kv);

}  // namespace eopert

#endif  // EOPERT_CONFIG_H_
