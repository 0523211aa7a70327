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

#ifndef EOPERT_EXPERIMENTS_H_
#define EOPERT_EXPERIMENTS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "eopert/config.h"
#include "eopert/core_model.h"
#include "eopert/estimate.h"
#include "eopert/perturb.h"
#include "eopert/records.h"

namespace eopert {

// One grid point of an analytic sweep.
struct SweepRow {
  Vec4 gamma = {};  // gamma_{1,0}, gamma_{1,1}, gamma_{-1,0}, gamma_{-1,1}
  double bias_pos_corr = 0.0;
  double bias_neg_corr = 0.0;
  double error_corr = 0.0;
  double bias_pos_given = 0.0;
  double bias_neg_given = 0.0;
  double error_given = 0.0;
  std::optional<double> bound_pos;
  std::optional<double> bound_neg;
  bool assumption_1b_pos = false;
  bool assumption_1b_neg = false;
  bool assumption_2 = false;
  bool error_vs_true = false;  // Error(Yhat_corr) <= Error(Yhat_true) + 1e-9
};

// Rows in grid order. Throws ConfigError if the grid is empty.
std::vector<SweepRow> RunSweep(const SweepConfig& config);
void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows);

struct DatasetConfig {
  // Absent: use the a_c column of the records as given (grid ignored).
  std::optional<RecordScenario::Kind> scenario;
  std::vector<double> grid;
  std::uint64_t seed = 0;
  int runs = 1;
  double train_fraction = 0.5;
};

// Test-split averages over all runs for one perturbation level.
struct DatasetRow {
  std::optional<double> level;
  double flip_rate = 0.0;  // fraction of test records with a_c != a
  EmpiricalMetrics given;
  EmpiricalMetrics corr;
  EmpiricalMetrics truth;
  double independence = 0.0;
};

// For each level and run: corrupt the attribute, split into train/test,
// derive Yhat_true and Yhat_corr on train, evaluate on test. Run k uses
// sub-streams of DeriveSeed(seed, k), and every level of a run sees the
// same split.
std::vector<DatasetRow> RunDatasetExperiment(const RecordSet& records,
                                             const DatasetConfig& config);
void WriteDatasetCsv(std::ostream& out, const DatasetConfig& config,
                     const std::vector<DatasetRow>& rows);

enum class Lemma1Mode { kAViolated, kBViolated };

struct Lemma1Report {
  ProblemInstance instance;
  PerturbationSpec spec;
  DerivedPredictor predictor;
  double bias_given = 0.0;
  double bias_corr = 0.0;
  bool assumption_1a = false;
  bool assumption_1b = false;
  bool pass = false;  // corrupted bias strictly above the given bias
};

// kAViolated: balanced base, (0.65, 0.6, 0, 0), prediction-dependent flip
// `flip` on (Y=1, A=0, Yt=-1) only. kBViolated: fig1-top-left rates on a
// balanced base with uniform flip rate `flip`.
Lemma1Report ReproduceLemma1(Lemma1Mode mode, double flip);
void PrintLemma1Report(std::ostream& out, const Lemma1Report& report);

// Emits the estimated instance in sweep-config syntax, plus corruption
// statistics when the records carry a_c.
void PrintEstimate(std::ostream& out, const RecordSet& records);

}  // namespace eopert

#endif  // EOPERT_EXPERIMENTS_H_
