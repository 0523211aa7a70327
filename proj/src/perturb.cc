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

#include "eopert/perturb.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "eopert/errors.h"
#include "eopert/text.h"
#include "eopert/rng.h"

namespace eopert {
namespace {

constexpr std::array<std::pair<ScheduleKind, std::string_view>, 4>
    kScheduleNames = {{{ScheduleKind::kEqual, "equal"},
                       {ScheduleKind::kHalves, "halves"},
                       {ScheduleKind::kPowerHalving, "power-halving"},
                       {ScheduleKind::kCapped, "capped"}}};

constexpr std::array<std::pair<RecordScenario::Kind, std::string_view>, 4>
    kScenarioNames = {
        {{RecordScenario::Kind::kIndependentFlip, "independent"},
         {RecordScenario::Kind::kScoreBandFlip, "score-band"},
         {RecordScenario::Kind::kIndependentFlipOnErrors, "independent-errors"},
         {RecordScenario::Kind::kScoreBandFlipOnErrors, "score-band-errors"}}};

}  // namespace

std::string_view ScheduleName(ScheduleKind kind) {
  for (const auto& [k, name] : kScheduleNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ScheduleKind> ParseScheduleKind(std::string_view name) {
  for (const auto& [k, n] : kScheduleNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

PerturbationSpec ScheduleEval(ScheduleKind kind, double gamma10) {
  if (!(gamma10 >= 0.0 && gamma10 <= 1.0)) {
    throw RangeError("gamma10 must lie in [0,1], got " +
                     FormatDouble(gamma10));
  }
  const double g = gamma10;
  Vec4 gamma = {g, g, g, g};
  switch (kind) {
    case ScheduleKind::kEqual:
      break;
    case ScheduleKind::kHalves:
      gamma = {g, g, g / 2.0, g / 2.0};
      break;
    case ScheduleKind::kPowerHalving:
      gamma = {g, g / 2.0, g / 4.0, g / 8.0};
      break;
    case ScheduleKind::kCapped: {
      const double r = std::min(2.0 * g, 0.8);
      gamma = {g, g, r, r};
      break;
    }
  }
  return PerturbationSpec::Restricted(gamma);
}

std::string_view ScenarioName(RecordScenario::Kind kind) {
  for (const auto& [k, name] : kScenarioNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<RecordScenario::Kind> ParseScenarioKind(std::string_view name) {
  for (const auto& [k, n] : kScenarioNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

RecordSet ApplyScenario(const RecordSet& records,
                        const RecordScenario& scenario, std::uint64_t seed) {
  if (scenario.UsesScore()) {
    if (!(scenario.level >= 0.0 && scenario.level <= 0.5)) {
      throw RangeError("score band half-width must lie in [0, 0.5]");
    }
    records.Require(false, true, false);
  } else if (!(scenario.level >= 0.0 && scenario.level <= 1.0)) {
    throw RangeError("flip probability must lie in [0,1]");
  }
  if (scenario.OnErrorsOnly()) records.Require(false, false, true);

  Rng rng(seed);
  RecordSet out = records;
  out.has_a_c = true;
  for (Record& r : out.rows) {
    bool flip;
    if (scenario.UsesScore()) {
      flip = std::abs(*r.score - 0.5) <= scenario.level;
    } else {
      flip = rng.Bernoulli(scenario.level);
    }
    if (scenario.OnErrorsOnly() && *r.yhat == r.y) flip = false;
    r.a_c = flip ? 1 - r.a : r.a;
  }
  return out;
}

}  // namespace eopert
