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

#ifndef EOPERT_METRICS_H_
#define EOPERT_METRICS_H_

#include <array>
#include <cstddef>
#include <optional>

#include "eopert/core_model.h"

namespace eopert {

// |P[Yt=1 | Y=y, A=0] - P[Yt=1 | Y=y, A=1]| for the given classifier.
double BiasGiven(const ProblemInstance& inst, int y);

// Same gap for a derived predictor evaluated with the true attribute.
double BiasDerived(const ProblemInstance& inst, const DerivedPredictor& pred,
                   int y);

// P[Yt != Y].
double ErrorGiven(const ProblemInstance& inst);

// P[Yhat != Y], linear in the four randomization probabilities.
double ErrorDerived(const ProblemInstance& inst, const DerivedPredictor& pred);

// Shrink factor of the bias bound,
//   F(g1, g2, p) = g1 p / (g1 p + (1-g2)(1-p))
//                - (1-g1) p / ((1-g1) p + g2 (1-p)) + 1,
// on D = [0,1) x [0,1) x (0,1). Throws DomainError elsewhere.
double BoundF(double gamma1, double gamma2, double p);

// Upper bound on Bias_{Y=y}(Yhat_corr) for a restricted spec:
//   BiasGiven(y) * (P[A=1 | Y=y, A_c=0] + P[A=0 | Y=y, A_c=1]).
// With p = P[A=1 | Y=y] that sum is F(gamma_{y,1}, gamma_{y,0}, p), which
// equals F(gamma_{y,0}, gamma_{y,1}, 1-p). Returns nullopt for general specs,
// whose flip rates are not functions of (y, a) alone.
std::optional<double> Theorem1Bound(const ProblemInstance& inst,
                                    const PerturbationSpec& spec, int y);

struct AssumptionCheck {
  bool holds = true;
  double violation = 0.0;  // max |gamma_{y,a,+1} - gamma_{y,a,-1}|
};

// Flip rates independent of the given prediction (conditional independence
// of Yt and A_c given Y and A).
AssumptionCheck CheckAssumption1a(const PerturbationSpec& spec,
                                  double tol = 1e-12);

// gamma_{y,0} + gamma_{y,1} <= 1 with both summands < 1. Restricted or
// lifted-restricted specs only; a general spec is read through its +1 slice.
bool CheckAssumption1b(const PerturbationSpec& spec, int y);

// alpha1 > alpha2 and beta1 > beta2.
bool CheckAssumption2(const ProblemInstance& inst);

// Mass table over (Y, A, Yt, A_c). Entries may be counts or probabilities;
// only ratios within a (Y, A) slice matter.
struct FourWayTable {
  std::array<double, 16> mass = {};

  static constexpr std::size_t Index(int y, int a, int yt, int ac) {
    return 4 * CellIndex(y, a) + 2 * (yt == 1 ? 0 : 1) +
           static_cast<std::size_t>(ac);
  }
  double& At(int y, int a, int yt, int ac) { return mass[Index(y, a, yt, ac)]; }
  double At(int y, int a, int yt, int ac) const {
    return mass[Index(y, a, yt, ac)];
  }
};

// Exact population table for an instance and a (possibly general) spec.
FourWayTable PopulationTable(const ProblemInstance& inst,
                             const PerturbationSpec& spec);

// max over (y, a, yt, ac) of
//   |P[Yt=yt, A_c=ac | y, a] - P[Yt=yt | y, a] P[A_c=ac | y, a]|.
// Throws EmptyCellError if a (Y, A) slice is empty.
double IndependenceMeasure(const FourWayTable& table);

// Closed-form EO solution in the balanced case (all P[Y=y, A=a] = 1/4,
// uniform flip rate gamma in [0, 1/2], alpha1 > alpha2 and beta1 > beta2).
// Throws PreconditionError outside that regime.
DerivedPredictor BalancedClosedForm(const ProblemInstance& inst, double gamma);

struct MetricsReport {
  double bias_pos_given = 0.0;
  double bias_neg_given = 0.0;
  double bias_pos_derived = 0.0;
  double bias_neg_derived = 0.0;
  double error_given = 0.0;
  double error_derived = 0.0;
  std::optional<double> bound_pos;
  std::optional<double> bound_neg;
};

// Metrics of the given classifier and of the predictor derived under
// `spec` (Yhat_true for a zero spec).
MetricsReport Evaluate(const ProblemInstance& inst,
                       const PerturbationSpec& spec);

}  // namespace eopert

#endif  // EOPERT_METRICS_H_
