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

#ifndef EOPERT_PERTURB_H_
#define EOPERT_PERTURB_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "eopert/core_model.h"
#include "eopert/records.h"

namespace eopert {

// How (gamma_{1,1}, gamma_{-1,0}, gamma_{-1,1}) follow gamma_{1,0} in the
// simulation sweeps:
//   Equal        (g, g, g)
//   Halves       (g, g/2, g/2)
//   PowerHalving (g/2, g/4, g/8)
//   Capped       (g, r, r) with r = min(2g, 0.8)
enum class ScheduleKind { kEqual, kHalves, kPowerHalving, kCapped };

std::string_view ScheduleName(ScheduleKind kind);
std::optional<ScheduleKind> ParseScheduleKind(std::string_view name);

// Restricted spec for a given gamma_{1,0}; throws RangeError outside [0,1].
PerturbationSpec ScheduleEval(ScheduleKind kind, double gamma10);

// Record-level corruption of the attribute.
struct RecordScenario {
  enum class Kind {
    kIndependentFlip,         // flip each a with probability `level`
    kScoreBandFlip,           // flip every a with |score - 0.5| <= `level`
    kIndependentFlipOnErrors,
    kScoreBandFlipOnErrors,   // the *OnErrors kinds touch only yhat != y
  };

  Kind kind = Kind::kIndependentFlip;
  double level = 0.0;  // gamma in [0,1], or band half-width r in [0, 0.5]

  bool UsesScore() const {
    return kind == Kind::kScoreBandFlip || kind == Kind::kScoreBandFlipOnErrors;
  }
  bool OnErrorsOnly() const {
    return kind == Kind::kIndependentFlipOnErrors ||
           kind == Kind::kScoreBandFlipOnErrors;
  }
};

std::string_view ScenarioName(RecordScenario::Kind kind);
std::optional<RecordScenario::Kind> ParseScenarioKind(std::string_view name);

// Returns a copy with a_c filled (a_c = a except where the scenario flips).
// Independent flips draw one uniform per row in row order, so the on-errors
// variant flips a subset of what the plain variant flips for the same seed.
// Throws MissingColumnError or RangeError.
RecordSet ApplyScenario(const RecordSet& records,
                        const RecordScenario& scenario, std::uint64_t seed);

}  // namespace eopert

#endif  // EOPERT_PERTURB_H_
