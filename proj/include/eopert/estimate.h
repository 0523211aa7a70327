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

#ifndef EOPERT_ESTIMATE_H_
#define EOPERT_ESTIMATE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eopert/core_model.h"
#include "eopert/metrics.h"
#include "eopert/records.h"

namespace eopert {

struct InstanceEstimate {
  ProblemInstance instance;
  std::array<std::size_t, 4> cell_counts = {};  // per (y, a), CellIndex order
};

// Plug-in frequencies of (Y, A) and of yhat = +1 within each cell. Needs the
// yhat column; throws ZeroCellError naming an empty (y, a) cell.
InstanceEstimate EstimateInstance(const RecordSet& records);

struct CorruptedTables {
  std::array<double, 8> joint = {};              // P[Y, A_c, Yt], TripleIndex
  std::array<std::size_t, 4> corrupted_counts = {};  // per (y, a_c)
  FourWayTable table;                             // counts over (Y, A, Yt, A_c)
  double flip_rate = 0.0;                         // fraction with a_c != a
};

// Needs yhat and a_c. Throws ZeroCellError if a (y, a_c) or (y, a) cell is
// empty.
CorruptedTables EstimateCorruptedTables(const RecordSet& records);

// Counts over (Y, A, Yt, A_c); needs yhat and a_c but accepts empty cells.
FourWayTable CountFourWayTable(const RecordSet& records);

// EO predictors trained on a record sample, with the true attribute
// (Yhat_true) or the a_c column (Yhat_corr).
DerivedPredictor DeriveTruePredictor(const RecordSet& train);
DerivedPredictor DeriveCorruptedPredictor(const RecordSet& train);

struct EmpiricalMetrics {
  double bias_pos = 0.0;
  double bias_neg = 0.0;
  double error = 0.0;
};

// Exact expectation over the predictor's coin flips: a record contributes
// p_{yhat, a} to the positive-prediction rate of its (y, a) cell.
EmpiricalMetrics EvaluatePredictorOnRecords(const RecordSet& records,
                                            const DerivedPredictor& pred);

struct SampledMetrics {
  EmpiricalMetrics mean;
  EmpiricalMetrics std_error;
};

// Cross-check mode: actually flips the coins, `repetitions` times.
SampledMetrics EvaluatePredictorSampled(const RecordSet& records,
                                        const DerivedPredictor& pred,
                                        int repetitions, std::uint64_t seed);

// Seeded uniform shuffle, then contiguous slices of floor(f * N) rows. If
// the fractions sum to one the leftover rows go to the last batch. Throws
// RangeError for non-positive fractions or a sum above one.
std::vector<RecordSet> Split(const RecordSet& records,
                             std::span<const double> fractions,
                             std::uint64_t seed);

// Draws n records from the generative model (Y, A) -> Yt -> A_c. When
// `with_score` is set, each record carries a score consistent with yhat.
RecordSet SampleRecords(const ProblemInstance& inst,
                        const PerturbationSpec& spec, std::size_t n,
                        std::uint64_t seed, bool with_score = false);

}  // namespace eopert

#endif  // EOPERT_ESTIMATE_H_
