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

#include "eopert/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "eopert/eo.h"
#include "eopert/errors.h"
#include "eopert/text.h"

namespace eopert {
namespace {

// (alpha, beta) for class y.
std::pair<double, double> Rates(const ProblemInstance& inst, int y) {
  return y == 1 ? std::make_pair(inst.alpha1, inst.beta1)
                : std::make_pair(inst.alpha2, inst.beta2);
}

}  // namespace

double BiasGiven(const ProblemInstance& inst, int y) {
  const auto [alpha, beta] = Rates(inst, y);
  return std::abs(alpha - beta);
}

double BiasDerived(const ProblemInstance& inst, const DerivedPredictor& pred,
                   int y) {
  const auto [alpha, beta] = Rates(inst, y);
  const double d0 = pred.Prob(1, 0) - pred.Prob(-1, 0);
  const double d1 = pred.Prob(1, 1) - pred.Prob(-1, 1);
  return std::abs(alpha * d0 - beta * d1 + pred.Prob(-1, 0) -
                  pred.Prob(-1, 1));
}

double ErrorGiven(const ProblemInstance& inst) {
  return inst.LabelPrior(1) + inst.alpha2 * inst.Base(-1, 0) -
         inst.alpha1 * inst.Base(1, 0) + inst.beta2 * inst.Base(-1, 1) -
         inst.beta1 * inst.Base(1, 1);
}

double ErrorDerived(const ProblemInstance& inst, const DerivedPredictor& pred) {
  const double n0 = inst.Base(-1, 0);
  const double n1 = inst.Base(-1, 1);
  const double q0 = inst.Base(1, 0);
  const double q1 = inst.Base(1, 1);
  return inst.LabelPrior(1) +
         (inst.alpha2 * n0 - inst.alpha1 * q0) * pred.Prob(1, 0) +
         (inst.beta2 * n1 - inst.beta1 * q1) * pred.Prob(1, 1) +
         (n0 - q0 - inst.alpha2 * n0 + inst.alpha1 * q0) * pred.Prob(-1, 0) +
         (n1 - q1 - inst.beta2 * n1 + inst.beta1 * q1) * pred.Prob(-1, 1);
}

double BoundF(double gamma1, double gamma2, double p) {
  if (!(gamma1 >= 0.0 && gamma1 < 1.0 && gamma2 >= 0.0 && gamma2 < 1.0 &&
        p > 0.0 && p < 1.0)) {
    throw DomainError("F is defined on [0,1) x [0,1) x (0,1), got (" +
                      FormatDouble(gamma1) + ", " + FormatDouble(gamma2) +
                      ", " + FormatDouble(p) + ")");
  }
  const double q = 1.0 - p;
  return gamma1 * p / (gamma1 * p + (1.0 - gamma2) * q) -
         (1.0 - gamma1) * p / ((1.0 - gamma1) * p + gamma2 * q) + 1.0;
}

std::optional<double> Theorem1Bound(const ProblemInstance& inst,
                                    const PerturbationSpec& spec, int y) {
  if (spec.kind != PerturbationSpec::Kind::kRestricted) return std::nullopt;
  const double g0 = spec.restricted[CellIndex(y, 0)];
  const double g1 = spec.restricted[CellIndex(y, 1)];
  return BiasGiven(inst, y) * BoundF(g1, g0, inst.GroupShare(y, 1));
}

AssumptionCheck CheckAssumption1a(const PerturbationSpec& spec, double tol) {
  AssumptionCheck check;
  for (int y : kLabels) {
    for (int a : kGroups) {
      check.violation = std::max(
          check.violation,
          std::abs(spec.FlipRate(y, a, 1) - spec.FlipRate(y, a, -1)));
    }
  }
  check.holds = check.violation <= tol;
  return check;
}

bool CheckAssumption1b(const PerturbationSpec& spec, int y) {
  const double g0 = spec.FlipRate(y, 0, 1);
  const double g1 = spec.FlipRate(y, 1, 1);
  return g0 + g1 <= 1.0 && g0 < 1.0 && g1 < 1.0;
}

bool CheckAssumption2(const ProblemInstance& inst) {
  return inst.alpha1 > inst.alpha2 && inst.beta1 > inst.beta2;
}

FourWayTable PopulationTable(const ProblemInstance& inst,
                             const PerturbationSpec& spec) {
  FourWayTable table;
  for (int y : kLabels) {
    for (int a : kGroups) {
      for (int yt : kLabels) {
        const double mass = inst.Joint(y, a, yt);
        const double flip = spec.FlipRate(y, a, yt);
        table.At(y, a, yt, a) = (1.0 - flip) * mass;
        table.At(y, a, yt, 1 - a) = flip * mass;
      }
    }
  }
  return table;
}

double IndependenceMeasure(const FourWayTable& table) {
  double worst = 0.0;
  for (int y : kLabels) {
    for (int a : kGroups) {
      double total = 0.0;
      for (int yt : kLabels) {
        for (int ac : kGroups) total += table.At(y, a, yt, ac);
      }
      if (!(total > 0.0)) {
        throw EmptyCellError("slice (Y=" + std::to_string(y) + ", A=" +
                             std::to_string(a) + ") of the table is empty");
      }
      for (int yt : kLabels) {
        for (int ac : kGroups) {
          const double pred_marginal =
              (table.At(y, a, yt, 0) + table.At(y, a, yt, 1)) / total;
          const double attr_marginal =
              (table.At(y, a, 1, ac) + table.At(y, a, -1, ac)) / total;
          const double joint = table.At(y, a, yt, ac) / total;
          worst = std::max(worst,
                           std::abs(joint - pred_marginal * attr_marginal));
        }
      }
    }
  }
  return worst;
}

DerivedPredictor BalancedClosedForm(const ProblemInstance& inst,
                                    double gamma) {
  for (double mass : inst.base) {
    if (std::abs(mass - 0.25) > kNormalizationTol) {
      throw PreconditionError("balanced closed form needs P[Y=y, A=a] = 1/4");
    }
  }
  if (!(gamma >= 0.0 && gamma <= 0.5)) {
    throw PreconditionError("balanced closed form needs gamma in [0, 1/2]");
  }
  if (!CheckAssumption2(inst)) {
    throw PreconditionError(
        "balanced closed form needs alpha1 > alpha2 and beta1 > beta2");
  }
  double a1 = inst.alpha1;
  double b1 = inst.beta1;
  double a2 = inst.alpha2;
  double b2 = inst.beta2;
  // The derivation assumes a2*b1 >= a1*b2; relabel the groups otherwise.
  const bool swapped = a2 * b1 < a1 * b2;
  if (swapped) {
    std::swap(a1, b1);
    std::swap(a2, b2);
  }
  const double u = 0.5 * ((1.0 - gamma) * (a2 - a1) + gamma * (b2 - b1));
  const double v = 0.5 * ((1.0 - gamma) * (b2 - b1) + gamma * (a2 - a1));
  const double cross = a1 * b2 - a2 * b1;  // <= 0 after orientation
  const double split = b2 - b1 + a1 - a2 + a2 * b1 - a1 * b2;
  const double shrink = 1.0 - 2.0 * gamma;

  // Most negative objective value keeping every probability in [0,1]:
  // p_{1,0} hits 1 when split < 0, p_{1,1} hits 1 otherwise.
  const double delta =
      split < 0.0 ? u : 2.0 * u * v / (2.0 * u + shrink * cross);
  const double neg1 = delta * shrink / (2.0 * u * v) * cross;
  const double pos0 = delta / u;
  const double pos1 = delta / v + neg1;

  auto unit = [](double x) { return std::clamp(x, 0.0, 1.0); };
  DerivedPredictor out;
  if (swapped) {
    out.p = {unit(pos1), unit(pos0), unit(neg1), 0.0};
  } else {
    out.p = {unit(pos0), unit(pos1), 0.0, unit(neg1)};
  }
  out.source = gamma > 0.0 ? DerivedPredictor::Source::kCorrupted
                           : DerivedPredictor::Source::kClean;
  return out;
}

MetricsReport Evaluate(const ProblemInstance& inst,
                       const PerturbationSpec& spec) {
  const DerivedPredictor pred = DerivePredictor(inst, spec);
  MetricsReport report;
  report.bias_pos_given = BiasGiven(inst, 1);
  report.bias_neg_given = BiasGiven(inst, -1);
  report.bias_pos_derived = BiasDerived(inst, pred, 1);
  report.bias_neg_derived = BiasDerived(inst, pred, -1);
  report.error_given = ErrorGiven(inst);
  report.error_derived = ErrorDerived(inst, pred);
  try {
    report.bound_pos = Theorem1Bound(inst, spec, 1);
    report.bound_neg = Theorem1Bound(inst, spec, -1);
  } catch (const DomainError&) {
    // A flip rate of 1 leaves the bound undefined.
    report.bound_pos.reset();
    report.bound_neg.reset();
  }
  return report;
}

}  // namespace eopert
