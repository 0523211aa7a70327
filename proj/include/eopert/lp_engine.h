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

#ifndef EOPERT_LP_ENGINE_H_
#define EOPERT_LP_ENGINE_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "eopert/core_model.h"

namespace eopert {

inline constexpr double kSingularTol = 1e-12;
inline constexpr double kBoxTol = 1e-12;
inline constexpr double kTieTol = 1e-12;

// The equalized-odds linear program over p in [0,1]^4:
//   minimize objective . p   subject to   constraint_rows[r] . p = 0.
// Row 0 equalizes P[Yhat=1 | Y=+1, A=a] across groups, row 1 does the same
// for Y=-1. Each row has the form (h0, -h1, 1-h0, -(1-h1)), where h_a is
// the positive rate of the given classifier in group a.
struct EoProgram {
  Vec4 objective = {};
  std::array<Vec4, 2> constraint_rows = {};

  // Row for positive rates (h0, h1) in the two groups.
  static Vec4 RowFromRates(double h0, double h1);

  double Objective(const Vec4& p) const;
  // max_r |constraint_rows[r] . p|
  double MaxResidual(const Vec4& p) const;
};

// True when both rows carry the (h0, -h1, 1-h0, -(1-h1)) pattern with
// h0, h1 in [0,1], up to `tol`.
bool HasValidRowPattern(const EoProgram& program, double tol = 1e-12);

struct LabelPriors {
  double positive = 0.5;  // P[Y=+1]
  double negative = 0.5;  // P[Y=-1]

  // The objective coefficients of an EO program sum to P[Y=-1] - P[Y=+1];
  // this recovers the priors from that sum.
  static LabelPriors FromProgram(const EoProgram& program);
};

struct LpSolution {
  Vec4 p_star = {};
  double objective_value = 0.0;
  // Per coordinate: 0 or 1 when the box bound is active, -1 when free.
  std::array<int, 4> vertex_active_set = {-1, -1, -1, -1};
  bool is_constant_one = false;
  bool is_constant_zero = false;
  bool tie_break_applied = false;
};

// All distinct feasible vertices of {p in [0,1]^4 : M p = 0}. Each candidate
// pins two coordinates to box bounds and solves the 2x2 system for the rest;
// candidates pinning three or four coordinates cover rank-deficient rows.
std::vector<LpSolution> EnumerateVertices(const EoProgram& program);

// Picks the representative among optimal candidates: constant +1, then
// constant -1 (the prior-majority class wins if both are optimal), then the
// lexicographically smallest vertex.
LpSolution ApplyConstantTieBreak(std::span<const LpSolution> candidates,
                                 const LabelPriors& priors);

// Global minimizer by exhaustive vertex enumeration. When `priors` is
// absent they are inferred with LabelPriors::FromProgram.
LpSolution Solve(const EoProgram& program,
                 std::optional<LabelPriors> priors = std::nullopt);

}  // namespace eopert

#endif  // EOPERT_LP_ENGINE_H_
