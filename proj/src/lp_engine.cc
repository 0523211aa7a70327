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

#include "eopert/lp_engine.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "eopert/errors.h"

namespace eopert {
namespace {

double Dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Snaps values within kBoxTol of 0 or 1 onto that bound. Returns false if
// some coordinate lies further outside [0,1].
bool ClampToBox(Vec4& p) {
  for (double& x : p) {
    if (!std::isfinite(x) || x < -kBoxTol || x > 1.0 + kBoxTol) return false;
    if (x <= kBoxTol) x = 0.0;
    if (x >= 1.0 - kBoxTol) x = 1.0;
  }
  return true;
}

bool SamePoint(const Vec4& a, const Vec4& b) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(a[i] - b[i]) > kBoxTol) return false;
  }
  return true;
}

LpSolution MakeSolution(const EoProgram& program, const Vec4& p) {
  LpSolution sol;
  sol.p_star = p;
  sol.objective_value = program.Objective(p);
  bool all_one = true;
  bool all_zero = true;
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0 || p[i] == 1.0) {
      sol.vertex_active_set[i] = static_cast<int>(p[i]);
    }
    all_one = all_one && p[i] == 1.0;
    all_zero = all_zero && p[i] == 0.0;
  }
  sol.is_constant_one = all_one;
  sol.is_constant_zero = all_zero;
  return sol;
}

// Solves the free coordinates given the pinned ones. `pinned` is a bitmask
// over coordinates, `bounds` holds the pinned values.
std::optional<Vec4> SolveFree(const EoProgram& program, unsigned pinned,
                              const Vec4& bounds) {
  const auto& rows = program.constraint_rows;
  Vec4 p = {};
  int free_idx[4];
  int n_free = 0;
  for (int i = 0; i < 4; ++i) {
    if (pinned & (1u << i)) {
      p[i] = bounds[i];
    } else {
      free_idx[n_free++] = i;
    }
  }
  // Right-hand side: -(row restricted to pinned coordinates) . p
  const double rhs0 = -Dot(rows[0], p);
  const double rhs1 = -Dot(rows[1], p);
  if (n_free == 2) {
    const int i = free_idx[0];
    const int j = free_idx[1];
    const double det = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i];
    if (std::abs(det) < kSingularTol) return std::nullopt;
    p[i] = (rhs0 * rows[1][j] - rows[0][j] * rhs1) / det;
    p[j] = (rows[0][i] * rhs1 - rhs0 * rows[1][i]) / det;
  } else if (n_free == 1) {
    const int i = free_idx[0];
    const int r = std::abs(rows[0][i]) >= std::abs(rows[1][i]) ? 0 : 1;
    if (std::abs(rows[r][i]) < kSingularTol) return std::nullopt;
    p[i] = (r == 0 ? rhs0 : rhs1) / rows[r][i];
  }
  if (!ClampToBox(p)) return std::nullopt;
  if (program.MaxResidual(p) > kConstraintTol) return std::nullopt;
  return p;
}

}  // namespace

Vec4 EoProgram::RowFromRates(double h0, double h1) {
  return {h0, -h1, 1.0 - h0, -(1.0 - h1)};
}

double EoProgram::Objective(const Vec4& p) const { return Dot(objective, p); }

double EoProgram::MaxResidual(const Vec4& p) const {
  return std::max(std::abs(Dot(constraint_rows[0], p)),
                  std::abs(Dot(constraint_rows[1], p)));
}

bool HasValidRowPattern(const EoProgram& program, double tol) {
  for (const Vec4& row : program.constraint_rows) {
    const double h0 = row[0];
    const double h1 = -row[1];
    if (h0 < -tol || h0 > 1.0 + tol || h1 < -tol || h1 > 1.0 + tol) {
      return false;
    }
    if (std::abs(row[2] - (1.0 - h0)) > tol ||
        std::abs(row[3] + (1.0 - h1)) > tol) {
      return false;
    }
  }
  return true;
}

LabelPriors LabelPriors::FromProgram(const EoProgram& program) {
  const double gap = program.objective[0] + program.objective[1] +
                     program.objective[2] + program.objective[3];
  // gap = P[Y=-1] - P[Y=+1] and the priors sum to one.
  return {(1.0 - gap) / 2.0, (1.0 + gap) / 2.0};
}

std::vector<LpSolution> EnumerateVertices(const EoProgram& program) {
  std::vector<LpSolution> out;
  for (unsigned pinned = 0; pinned < 16; ++pinned) {
    const int n_pinned = std::popcount(pinned);
    if (n_pinned < 2) continue;
    // Every 0/1 assignment of the pinned coordinates.
    for (unsigned assign = 0; assign < 16; ++assign) {
      if ((assign & ~pinned) != 0) continue;
      Vec4 bounds = {};
      for (int i = 0; i < 4; ++i) bounds[i] = (assign >> i) & 1u ? 1.0 : 0.0;
      const std::optional<Vec4> p = SolveFree(program, pinned, bounds);
      if (!p) continue;
      const bool seen =
          std::any_of(out.begin(), out.end(), [&](const LpSolution& s) {
            return SamePoint(s.p_star, *p);
          });
      if (!seen) out.push_back(MakeSolution(program, *p));
    }
  }
  return out;
}

LpSolution ApplyConstantTieBreak(std::span<const LpSolution> candidates,
                                 const LabelPriors& priors) {
  const LpSolution* ones = nullptr;
  const LpSolution* zeros = nullptr;
  const LpSolution* lex_min = nullptr;
  for (const LpSolution& c : candidates) {
    if (c.is_constant_one) ones = &c;
    if (c.is_constant_zero) zeros = &c;
    if (lex_min == nullptr ||
        std::lexicographical_compare(c.p_star.begin(), c.p_star.end(),
                                     lex_min->p_star.begin(),
                                     lex_min->p_star.end())) {
      lex_min = &c;
    }
  }
  if (lex_min == nullptr) {
    throw DegenerateProgramError("tie-break called without candidates");
  }
  const LpSolution* pick = lex_min;
  if (ones != nullptr && zeros != nullptr) {
    pick = priors.positive >= priors.negative ? ones : zeros;
  } else if (ones != nullptr) {
    pick = ones;
  } else if (zeros != nullptr) {
    pick = zeros;
  }
  LpSolution result = *pick;
  result.tie_break_applied = candidates.size() > 1;
  return result;
}

LpSolution Solve(const EoProgram& program, std::optional<LabelPriors> priors) {
  const std::vector<LpSolution> vertices = EnumerateVertices(program);
  if (vertices.empty()) {
    throw DegenerateProgramError("no feasible vertex found");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const LpSolution& v : vertices) best = std::min(best, v.objective_value);
  std::vector<LpSolution> optimal;
  for (const LpSolution& v : vertices) {
    if (v.objective_value <= best + kTieTol) optimal.push_back(v);
  }
  return ApplyConstantTieBreak(optimal,
                               priors.value_or(LabelPriors::FromProgram(program)));
}

}  // namespace eopert
