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

#ifndef EOPERT_EO_H_
#define EOPERT_EO_H_

#include <array>
#include <optional>

#include "eopert/core_model.h"
#include "eopert/lp_engine.h"

namespace eopert {

// Joint law of (Y, A_c, Yt) seen by the EO training step when the attribute
// is corrupted, together with the derived conditionals.
struct CorruptedJoint {
  std::array<double, 8> joint = {};  // P[Y=y, A_c=a, Yt=yt], TripleIndex order
  Vec4 h_c = {};                     // P[Yt=1 | Y=y, A_c=a]
  Vec4 posterior = {};               // P[A=1 | Y=y, A_c=a]

  // P[Y=y, A_c=a].
  double Mass(int y, int a) const {
    return joint[TripleIndex(y, a, 1)] + joint[TripleIndex(y, a, -1)];
  }
};

// EO program whose coefficients come from an arbitrary (Y, group, Yt) joint
// table: objective P[Y=-1, a, yt] - P[Y=1, a, yt] for p_{yt,a} and rows built
// from P[Yt=1 | Y=y, group=a]. Throws EmptyCellError if some (y, a) slice
// has no mass. Also used for empirical joints.
EoProgram BuildProgramFromJoint(const std::array<double, 8>& joint);

EoProgram BuildCleanProgram(const ProblemInstance& inst);

CorruptedJoint BuildCorruptedJoint(const ProblemInstance& inst,
                                   const PerturbationSpec& spec);

// Program solved for Yhat_corr, built from the corrupted joint.
EoProgram BuildCorruptedProgram(const ProblemInstance& inst,
                                const PerturbationSpec& spec);

// Same program for a restricted spec, assembled from the closed-form
// posteriors and the mixed rates e, f (Y=+1) and g, h (Y=-1). Throws
// RangeError for general specs.
EoProgram BuildCorruptedProgramClosedForm(const ProblemInstance& inst,
                                          const PerturbationSpec& spec);

// Yhat_true when `spec` is absent or all-zero, Yhat_corr otherwise.
DerivedPredictor DerivePredictor(
    const ProblemInstance& inst,
    const std::optional<PerturbationSpec>& spec = std::nullopt);

}  // namespace eopert

#endif  // EOPERT_EO_H_
