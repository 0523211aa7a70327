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

#include "eopert/core_model.h"

#include <cmath>
#include <string>

#include "eopert/errors.h"
#include "eopert/text.h"

namespace eopert {
namespace {

std::string CellName(int y, int a) {
  return "(Y=" + std::to_string(y) + ", A=" + std::to_string(a) + ")";
}

bool InUnit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

ProblemInstance ProblemInstance::Balanced(double alpha1, double beta1,
                                          double alpha2, double beta2) {
  ProblemInstance inst;
  inst.alpha1 = alpha1;
  inst.beta1 = beta1;
  inst.alpha2 = alpha2;
  inst.beta2 = beta2;
  return inst;
}

double ProblemInstance::PositiveRate(int y, int a) const {
  if (y == 1) return a == 0 ? alpha1 : beta1;
  return a == 0 ? alpha2 : beta2;
}

double ProblemInstance::Joint(int y, int a, int yt) const {
  const double rate = PositiveRate(y, a);
  return Base(y, a) * (yt == 1 ? rate : 1.0 - rate);
}

const ProblemInstance& ValidateInstance(const ProblemInstance& inst) {
  double total = 0.0;
  for (int y : kLabels) {
    for (int a : kGroups) {
      const double mass = inst.Base(y, a);
      // Negated comparison so that NaN is rejected as well.
      if (!(mass > 0.0)) {
        throw ZeroCellError("P" + CellName(y, a) + " must be positive, got " +
                            FormatDouble(mass));
      }
      total += mass;
    }
  }
  if (!(std::abs(total - 1.0) <= kNormalizationTol)) {
    throw NormalizationError("base probabilities sum to " +
                             FormatDouble(total) + ", expected 1");
  }
  for (int y : kLabels) {
    for (int a : kGroups) {
      if (!InUnit(inst.PositiveRate(y, a))) {
        throw RangeError("P[Yt=1 | Y=" + std::to_string(y) +
                         ", A=" + std::to_string(a) + "] outside [0,1]");
      }
    }
  }
  return inst;
}

PerturbationSpec PerturbationSpec::Restricted(const Vec4& gamma) {
  PerturbationSpec spec;
  spec.kind = Kind::kRestricted;
  spec.restricted = gamma;
  return spec;
}

PerturbationSpec PerturbationSpec::Uniform(double gamma) {
  return Restricted({gamma, gamma, gamma, gamma});
}

PerturbationSpec PerturbationSpec::General(const std::array<double, 8>& gamma) {
  PerturbationSpec spec;
  spec.kind = Kind::kGeneral;
  spec.general = gamma;
  return spec;
}

double PerturbationSpec::FlipRate(int y, int a, int yt) const {
  if (kind == Kind::kRestricted) return restricted[CellIndex(y, a)];
  return general[TripleIndex(y, a, yt)];
}

bool PerturbationSpec::IsZero() const {
  for (int y : kLabels) {
    for (int a : kGroups) {
      for (int yt : kLabels) {
        if (FlipRate(y, a, yt) != 0.0) return false;
      }
    }
  }
  return true;
}

const PerturbationSpec& ValidatePerturbation(const PerturbationSpec& spec) {
  for (int y : kLabels) {
    for (int a : kGroups) {
      for (int yt : kLabels) {
        if (!InUnit(spec.FlipRate(y, a, yt))) {
          throw RangeError("flip probability for " + CellName(y, a) +
                           " outside [0,1]");
        }
      }
    }
  }
  return spec;
}

PerturbationSpec LiftPerturbation(const PerturbationSpec& spec) {
  if (spec.kind == PerturbationSpec::Kind::kGeneral) return spec;
  std::array<double, 8> general{};
  for (int y : kLabels) {
    for (int a : kGroups) {
      for (int yt : kLabels) {
        general[TripleIndex(y, a, yt)] = spec.restricted[CellIndex(y, a)];
      }
    }
  }
  return PerturbationSpec::General(general);
}

}  // namespace eopert
