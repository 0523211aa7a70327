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

#include "eopert/eo.h"

#include <string>

#include "eopert/errors.h"

namespace eopert {
namespace {

void CheckMass(double mass, int y, int a, const char* what) {
  if (!(mass > 0.0)) {
    throw EmptyCellError(std::string(what) + " slice (Y=" + std::to_string(y) +
                         ", " + std::to_string(a) + ") has no mass");
  }
}

// P[Y=y, A_c=a] under a restricted spec.
double CorruptedMass(const ProblemInstance& inst, const Vec4& gamma, int y,
                     int a) {
  const int other = 1 - a;
  return (1.0 - gamma[CellIndex(y, a)]) * inst.Base(y, a) +
         gamma[CellIndex(y, other)] * inst.Base(y, other);
}

}  // namespace

EoProgram BuildProgramFromJoint(const std::array<double, 8>& joint) {
  EoProgram program;
  for (int yt : kLabels) {
    for (int a : kGroups) {
      program.objective[CellIndex(yt, a)] =
          joint[TripleIndex(-1, a, yt)] - joint[TripleIndex(1, a, yt)];
    }
  }
  for (int r = 0; r < 2; ++r) {
    const int y = kLabels[r];
    double rate[2];
    for (int a : kGroups) {
      const double pos = joint[TripleIndex(y, a, 1)];
      const double mass = pos + joint[TripleIndex(y, a, -1)];
      CheckMass(mass, y, a, "joint");
      rate[a] = pos / mass;
    }
    program.constraint_rows[r] = EoProgram::RowFromRates(rate[0], rate[1]);
  }
  return program;
}

EoProgram BuildCleanProgram(const ProblemInstance& inst) {
  EoProgram program;
  for (int yt : kLabels) {
    for (int a : kGroups) {
      program.objective[CellIndex(yt, a)] =
          inst.Joint(-1, a, yt) - inst.Joint(1, a, yt);
    }
  }
  program.constraint_rows[0] = EoProgram::RowFromRates(inst.alpha1, inst.beta1);
  program.constraint_rows[1] = EoProgram::RowFromRates(inst.alpha2, inst.beta2);
  return program;
}

CorruptedJoint BuildCorruptedJoint(const ProblemInstance& inst,
                                   const PerturbationSpec& spec) {
  const PerturbationSpec general = LiftPerturbation(spec);
  CorruptedJoint out;
  std::array<double, 4> from_group_one = {};  // P[Y=y, A=1, A_c=a]
  for (int y : kLabels) {
    for (int a : kGroups) {
      for (int yt : kLabels) {
        const double mass = inst.Joint(y, a, yt);
        const double flip = general.FlipRate(y, a, yt);
        out.joint[TripleIndex(y, a, yt)] += (1.0 - flip) * mass;
        out.joint[TripleIndex(y, 1 - a, yt)] += flip * mass;
        if (a == 1) {
          from_group_one[CellIndex(y, 1)] += (1.0 - flip) * mass;
          from_group_one[CellIndex(y, 0)] += flip * mass;
        }
      }
    }
  }
  for (int y : kLabels) {
    for (int a : kGroups) {
      const double mass = out.Mass(y, a);
      CheckMass(mass, y, a, "corrupted (Y, A_c)");
      out.h_c[CellIndex(y, a)] = out.joint[TripleIndex(y, a, 1)] / mass;
      out.posterior[CellIndex(y, a)] = from_group_one[CellIndex(y, a)] / mass;
    }
  }
  return out;
}

EoProgram BuildCorruptedProgram(const ProblemInstance& inst,
                                const PerturbationSpec& spec) {
  return BuildProgramFromJoint(BuildCorruptedJoint(inst, spec).joint);
}

EoProgram BuildCorruptedProgramClosedForm(const ProblemInstance& inst,
                                          const PerturbationSpec& spec) {
  if (spec.kind != PerturbationSpec::Kind::kRestricted) {
    throw RangeError("closed-form corrupted program needs a restricted spec");
  }
  const Vec4& g = spec.restricted;
  // P[A=1 | Y=y, A_c=a] from Bayes' rule under attribute-only flips.
  auto posterior = [&](int y, int a) {
    const double p1 = inst.Base(y, 1);
    const double p0 = inst.Base(y, 0);
    const double g0 = g[CellIndex(y, 0)];
    const double g1 = g[CellIndex(y, 1)];
    double num;
    double den;
    if (a == 0) {
      num = g1 * p1;
      den = g1 * p1 + (1.0 - g0) * p0;
    } else {
      num = (1.0 - g1) * p1;
      den = (1.0 - g1) * p1 + g0 * p0;
    }
    CheckMass(den, y, a, "corrupted (Y, A_c)");
    return num / den;
  };
  const double e = inst.alpha1 + (inst.beta1 - inst.alpha1) * posterior(1, 0);
  const double f = inst.alpha1 + (inst.beta1 - inst.alpha1) * posterior(1, 1);
  const double gg = inst.alpha2 + (inst.beta2 - inst.alpha2) * posterior(-1, 0);
  const double h = inst.alpha2 + (inst.beta2 - inst.alpha2) * posterior(-1, 1);

  const double neg0 = CorruptedMass(inst, g, -1, 0);
  const double neg1 = CorruptedMass(inst, g, -1, 1);
  const double pos0 = CorruptedMass(inst, g, 1, 0);
  const double pos1 = CorruptedMass(inst, g, 1, 1);

  EoProgram program;
  program.objective[CellIndex(1, 0)] = neg0 * gg - pos0 * e;
  program.objective[CellIndex(1, 1)] = neg1 * h - pos1 * f;
  program.objective[CellIndex(-1, 0)] = neg0 * (1.0 - gg) - pos0 * (1.0 - e);
  program.objective[CellIndex(-1, 1)] = neg1 * (1.0 - h) - pos1 * (1.0 - f);
  program.constraint_rows[0] = EoProgram::RowFromRates(e, f);
  program.constraint_rows[1] = EoProgram::RowFromRates(gg, h);
  return program;
}

DerivedPredictor DerivePredictor(const ProblemInstance& inst,
                                 const std::optional<PerturbationSpec>& spec) {
  ValidateInstance(inst);
  const bool corrupted = spec.has_value() && !spec->IsZero();
  if (spec) ValidatePerturbation(*spec);
  const EoProgram program = corrupted ? BuildCorruptedProgram(inst, *spec)
                                      : BuildCleanProgram(inst);
  const LabelPriors priors{inst.LabelPrior(1), inst.LabelPrior(-1)};
  const LpSolution sol = Solve(program, priors);
  DerivedPredictor out;
  out.p = sol.p_star;
  out.source = corrupted ? DerivedPredictor::Source::kCorrupted
                         : DerivedPredictor::Source::kClean;
  out.tie_break_applied = sol.tie_break_applied;
  return out;
}

}  // namespace eopert
