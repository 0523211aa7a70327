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

#include <array>
#include <vector>

#include "eopert/eo.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace eopert {
namespace {

using testing::Draw;

EoProgram RandomProgram(Draw& d) {
  EoProgram prog;
  for (double& c : prog.objective) c = d.In(-0.5, 0.5);
  prog.constraint_rows[0] = EoProgram::RowFromRates(d.Unit(), d.Unit());
  prog.constraint_rows[1] = EoProgram::RowFromRates(d.Unit(), d.Unit());
  return prog;
}

// Alternates between free-form programs and ones built from instances.
EoProgram MixedProgram(Draw& d, int i) {
  if (i % 2 == 0) return RandomProgram(d);
  const ProblemInstance inst = testing::RandomInstance(d);
  if (i % 4 == 1) return BuildCleanProgram(inst);
  const Vec4 gamma = {d.In(0, 0.9), d.In(0, 0.9), d.In(0, 0.9), d.In(0, 0.9)};
  return BuildCorruptedProgram(inst, PerturbationSpec::Restricted(gamma));
}

TEST(RowPatternTest, RowFromRates) {
  const Vec4 row = EoProgram::RowFromRates(0.3, 0.8);
  EXPECT_DOUBLE_EQ(row[0], 0.3);
  EXPECT_DOUBLE_EQ(row[1], -0.8);
  EXPECT_DOUBLE_EQ(row[2], 0.7);
  EXPECT_DOUBLE_EQ(row[3], -0.2);
  EoProgram prog;
  prog.constraint_rows = {row, EoProgram::RowFromRates(0.0, 1.0)};
  EXPECT_TRUE(HasValidRowPattern(prog));
  prog.constraint_rows[1][2] = 0.5;
  EXPECT_FALSE(HasValidRowPattern(prog));
}

TEST(SolveTest, ZeroObjectivePicksConstantClassifier) {
  Draw d(3);
  for (int i = 0; i < 20; ++i) {
    EoProgram prog = RandomProgram(d);
    prog.objective = {0, 0, 0, 0};
    const LpSolution sol = Solve(prog);
    EXPECT_TRUE(sol.is_constant_one);
    EXPECT_TRUE(sol.tie_break_applied);
    EXPECT_EQ(sol.p_star, (Vec4{1, 1, 1, 1}));
    // Negative class more likely: constant -1 wins the tie.
    const LpSolution neg = Solve(prog, LabelPriors{0.4, 0.6});
    EXPECT_TRUE(neg.is_constant_zero);
  }
}

TEST(SolveTest, LemmaOneCounterexample) {
  std::array<double, 8> g = {};
  g[TripleIndex(1, 0, -1)] = 0.15;
  const ProblemInstance inst = ProblemInstance::Balanced(0.65, 0.6, 0.0, 0.0);
  const LpSolution sol =
      Solve(BuildCorruptedProgram(inst, PerturbationSpec::General(g)));
  EXPECT_NEAR(sol.p_star[0], 0.83, 0.01);
  EXPECT_EQ(sol.p_star[1], 1.0);
  EXPECT_EQ(sol.p_star[2], 0.0);
  EXPECT_EQ(sol.p_star[3], 0.0);
  EXPECT_EQ(sol.vertex_active_set, (std::array<int, 4>{-1, 1, 0, 0}));
}

TEST(SolveTest, FeasibleForRandomPrograms) {
  Draw d(17);
  for (int i = 0; i < 3000; ++i) {
    const EoProgram prog = MixedProgram(d, i);
    const LpSolution sol = Solve(prog);
    EXPECT_LE(prog.MaxResidual(sol.p_star), kConstraintTol);
    for (double x : sol.p_star) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    EXPECT_DOUBLE_EQ(sol.objective_value, prog.Objective(sol.p_star));
  }
}

TEST(SolveTest, NoVertexBeatsTheReturnedOne) {
  Draw d(19);
  for (int i = 0; i < 500; ++i) {
    const EoProgram prog = MixedProgram(d, i);
    const LpSolution sol = Solve(prog);
    for (const LpSolution& v : EnumerateVertices(prog)) {
      EXPECT_GE(v.objective_value, sol.objective_value - kTieTol);
    }
  }
}

TEST(SolveTest, MatchesGridOracle) {
  Draw d(23);
  for (int i = 0; i < 40; ++i) {
    const EoProgram prog = i % 2 == 0 ? BuildProgramFromJoint(testing::RandomJoint(d))
                                      : MixedProgram(d, 2 * i + 1);
    const LpSolution sol = Solve(prog);
    const testing::GridOptimum grid = testing::GridOracle(prog);
    EXPECT_LE(sol.objective_value, grid.objective + 5e-3) << "program " << i;
    EXPECT_GE(sol.objective_value, grid.objective - 5e-3) << "program " << i;
  }
}

TEST(SolveTest, NoSampledFeasiblePointBeatsSolver) {
  // Arbitrary objectives, where the relaxed grid oracle is not a lower bound.
  Draw d(24);
  for (int i = 0; i < 300; ++i) {
    const EoProgram prog = RandomProgram(d);
    const LpSolution sol = Solve(prog);
    EXPECT_LE(sol.objective_value, testing::SampledFeasibleMin(prog, 20000, i) + 1e-12)
        << "program " << i;
  }
}

TEST(SolveTest, RankDeficientRows) {
  // Identical rows leave a two-dimensional solution set per row; vertices
  // then pin three coordinates.
  EoProgram prog;
  prog.constraint_rows = {EoProgram::RowFromRates(0.7, 0.2),
                          EoProgram::RowFromRates(0.7, 0.2)};
  prog.objective = {-0.3, -0.1, 0.2, 0.4};
  const LpSolution sol = Solve(prog);
  EXPECT_LE(prog.MaxResidual(sol.p_star), kConstraintTol);
  const testing::GridOptimum grid = testing::GridOracle(prog);
  EXPECT_NEAR(sol.objective_value, grid.objective, 5e-3);

  // Rows with h0 = h1 = h: only the constant directions survive.
  prog.constraint_rows = {EoProgram::RowFromRates(0.5, 0.5),
                          EoProgram::RowFromRates(0.5, 0.5)};
  const LpSolution sol2 = Solve(prog);
  EXPECT_LE(prog.MaxResidual(sol2.p_star), kConstraintTol);
  EXPECT_NEAR(sol2.objective_value, testing::GridOracle(prog).objective,
              5e-3);
}

TEST(SolveTest, TranslationShiftsObjectiveBySum) {
  Draw d(29);
  for (int i = 0; i < 300; ++i) {
    const ProblemInstance inst = testing::RandomInstance(d);
    const EoProgram prog = BuildCleanProgram(inst);
    const LpSolution sol = Solve(prog);
    double sum = 0.0;
    for (double c : prog.objective) sum += c;
    EXPECT_NEAR(sum, inst.LabelPrior(-1) - inst.LabelPrior(1), 1e-12);
    double lo = 1.0;
    double hi = 0.0;
    for (double x : sol.p_star) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    for (double c : {-lo, 1.0 - hi, -0.5 * lo, 0.5 * (1.0 - hi)}) {
      Vec4 shifted = sol.p_star;
      for (double& x : shifted) x += c;
      EXPECT_NEAR(prog.Objective(shifted) - sol.objective_value, c * sum,
                  1e-12);
      EXPECT_LE(prog.MaxResidual(shifted), 1e-9);
    }
  }
}

TEST(SolveTest, EqualPriorsMakeTranslatesOptimal) {
  Draw d(31);
  for (int i = 0; i < 200; ++i) {
    ProblemInstance inst = testing::RandomInstance(d);
    const double s0 = inst.base[0] / (inst.base[0] + inst.base[1]);
    const double s1 = inst.base[2] / (inst.base[2] + inst.base[3]);
    inst.base = {0.5 * s0, 0.5 * (1 - s0), 0.5 * s1, 0.5 * (1 - s1)};
    const EoProgram prog = BuildCleanProgram(inst);
    const LpSolution sol = Solve(prog);
    double lo = 1.0;
    for (double x : sol.p_star) lo = std::min(lo, x);
    Vec4 shifted = sol.p_star;
    for (double& x : shifted) x -= lo;
    EXPECT_NEAR(prog.Objective(shifted), sol.objective_value, 1e-12);
  }
}

TEST(SolveTest, Deterministic) {
  Draw d(37);
  for (int i = 0; i < 100; ++i) {
    const EoProgram prog = MixedProgram(d, i);
    const LpSolution a = Solve(prog);
    const LpSolution b = Solve(prog);
    EXPECT_EQ(a.p_star, b.p_star);
    EXPECT_EQ(a.objective_value, b.objective_value);
    EXPECT_EQ(a.vertex_active_set, b.vertex_active_set);
  }
}

LpSolution Candidate(const Vec4& p) {
  LpSolution s;
  s.p_star = p;
  s.is_constant_one = p == Vec4{1, 1, 1, 1};
  s.is_constant_zero = p == Vec4{0, 0, 0, 0};
  return s;
}

TEST(TieBreakTest, PrefersConstantOne) {
  const std::vector<LpSolution> c = {Candidate({0.2, 1, 0, 0.3}),
                                     Candidate({1, 1, 1, 1})};
  const LpSolution pick = ApplyConstantTieBreak(c, LabelPriors{0.5, 0.5});
  EXPECT_TRUE(pick.is_constant_one);
  EXPECT_TRUE(pick.tie_break_applied);
}

TEST(TieBreakTest, SingleZeroCandidate) {
  const std::vector<LpSolution> c = {Candidate({0, 0, 0, 0})};
  const LpSolution pick = ApplyConstantTieBreak(c, LabelPriors{0.9, 0.1});
  EXPECT_TRUE(pick.is_constant_zero);
  EXPECT_FALSE(pick.tie_break_applied);
}

TEST(TieBreakTest, UniqueNonConstantUnchanged) {
  const std::vector<LpSolution> c = {Candidate({0.83, 1, 0, 0})};
  EXPECT_EQ(ApplyConstantTieBreak(c, LabelPriors{}).p_star,
            (Vec4{0.83, 1, 0, 0}));
}

TEST(TieBreakTest, LexicographicAmongNonConstant) {
  const std::vector<LpSolution> c = {Candidate({0.5, 1, 0, 0}),
                                     Candidate({0.5, 0.2, 1, 0}),
                                     Candidate({0.7, 0, 0, 0})};
  EXPECT_EQ(ApplyConstantTieBreak(c, LabelPriors{}).p_star,
            (Vec4{0.5, 0.2, 1, 0}));
}

TEST(TieBreakTest, BothConstantsFollowPriors) {
  const std::vector<LpSolution> c = {Candidate({0, 0, 0, 0}),
                                     Candidate({1, 1, 1, 1})};
  EXPECT_TRUE(ApplyConstantTieBreak(c, LabelPriors{0.5, 0.5}).is_constant_one);
  EXPECT_TRUE(ApplyConstantTieBreak(c, LabelPriors{0.3, 0.7}).is_constant_zero);
}

TEST(LabelPriorsTest, RecoveredFromObjectiveSum) {
  ProblemInstance inst;
  inst.base = {0.1, 0.2, 0.3, 0.4};
  inst.alpha1 = 0.6;
  inst.beta1 = 0.5;
  inst.alpha2 = 0.3;
  inst.beta2 = 0.2;
  const LabelPriors pr = LabelPriors::FromProgram(BuildCleanProgram(inst));
  EXPECT_NEAR(pr.positive, 0.3, 1e-12);
  EXPECT_NEAR(pr.negative, 0.7, 1e-12);
}

}  // namespace
}  // namespace eopert
