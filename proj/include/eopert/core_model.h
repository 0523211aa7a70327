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

#ifndef EOPERT_CORE_MODEL_H_
#define EOPERT_CORE_MODEL_H_

#include <array>
#include <cstddef>

namespace eopert {

// Every 4-tuple in the library is ordered (1,0), (1,1), (-1,0), (-1,1):
// the first index is a label in {+1,-1} (Y for base rates, the given
// prediction for predictor probabilities), the second a group in {0,1}.
using Vec4 = std::array<double, 4>;

inline constexpr std::array<int, 2> kLabels = {1, -1};
inline constexpr std::array<int, 2> kGroups = {0, 1};

inline constexpr std::size_t CellIndex(int label, int group) {
  return (label == 1 ? 0 : 2) + static_cast<std::size_t>(group);
}

// Index into an 8-entry table over (label, group, prediction), with the
// (label, group) pair in CellIndex order and prediction +1 before -1.
inline constexpr std::size_t TripleIndex(int label, int group, int prediction) {
  return 2 * CellIndex(label, group) + (prediction == 1 ? 0 : 1);
}

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kConstraintTol = 1e-9;

// Joint law of (Y, A) plus the conditionals of the given classifier.
struct ProblemInstance {
  Vec4 base = {0.25, 0.25, 0.25, 0.25};  // P[Y=y, A=a]
  double alpha1 = 0.0;                   // P[Yt=1 | Y=1, A=0]
  double beta1 = 0.0;                    // P[Yt=1 | Y=1, A=1]
  double alpha2 = 0.0;                   // P[Yt=1 | Y=-1, A=0]
  double beta2 = 0.0;                    // P[Yt=1 | Y=-1, A=1]

  static ProblemInstance Balanced(double alpha1, double beta1, double alpha2,
                                  double beta2);

  double Base(int y, int a) const { return base[CellIndex(y, a)]; }
  // P[Yt=1 | Y=y, A=a].
  double PositiveRate(int y, int a) const;
  // P[Y=y].
  double LabelPrior(int y) const { return Base(y, 0) + Base(y, 1); }
  // P[A=a | Y=y].
  double GroupShare(int y, int a) const { return Base(y, a) / LabelPrior(y); }
  // P[Y=y, A=a, Yt=yt].
  double Joint(int y, int a, int yt) const;
};

// Throws ZeroCellError, NormalizationError or RangeError; otherwise returns
// the instance unchanged.
const ProblemInstance& ValidateInstance(const ProblemInstance& inst);

// Conditional attribute flip probabilities used during EO training.
// Restricted entries are gamma_{y,a} = P[A_c != A | Y=y, A=a]; general
// entries gamma_{y,a,yt} additionally condition on the given prediction.
struct PerturbationSpec {
  enum class Kind { kRestricted, kGeneral };

  Kind kind = Kind::kRestricted;
  Vec4 restricted = {0.0, 0.0, 0.0, 0.0};           // CellIndex order
  std::array<double, 8> general = {};                // TripleIndex order

  static PerturbationSpec Zero() { return Restricted({0.0, 0.0, 0.0, 0.0}); }
  static PerturbationSpec Restricted(const Vec4& gamma);
  static PerturbationSpec Uniform(double gamma);
  static PerturbationSpec General(const std::array<double, 8>& gamma);

  // P[A_c != A | Y=y, A=a, Yt=yt], valid for either kind.
  double FlipRate(int y, int a, int yt) const;
  bool IsZero() const;
};

// Throws RangeError if any entry lies outside [0,1].
const PerturbationSpec& ValidatePerturbation(const PerturbationSpec& spec);

// Canonical general form; restricted entries are copied to both prediction
// slices.
PerturbationSpec LiftPerturbation(const PerturbationSpec& spec);

// A randomized post-processor: predicts +1 with probability p[CellIndex(yt,
// a)] when the given classifier outputs yt on a point with attribute a.
struct DerivedPredictor {
  enum class Source { kClean, kCorrupted };

  Vec4 p = {1.0, 1.0, 0.0, 0.0};
  Source source = Source::kClean;
  bool tie_break_applied = false;

  // The predictor that reproduces the given classifier.
  static DerivedPredictor Identity() { return {}; }
  double Prob(int yt, int a) const { return p[CellIndex(yt, a)]; }
};

}  // namespace eopert

#endif  // EOPERT_CORE_MODEL_H_
