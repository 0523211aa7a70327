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

#include "eopert/experiments.h"

#include <ostream>
#include <string>

#include "eopert/eo.h"
#include "eopert/errors.h"
#include "eopert/metrics.h"
#include "eopert/rng.h"
#include "eopert/text.h"

namespace eopert {
namespace {

constexpr std::uint64_t kScenarioStream = 0;
constexpr std::uint64_t kSplitStream = 1;

std::string Opt(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

void Accumulate(EmpiricalMetrics& sum, const EmpiricalMetrics& m) {
  sum.bias_pos += m.bias_pos;
  sum.bias_neg += m.bias_neg;
  sum.error += m.error;
}

void Scale(EmpiricalMetrics& m, double factor) {
  m.bias_pos *= factor;
  m.bias_neg *= factor;
  m.error *= factor;
}

void WriteMetrics(std::ostream& out, const EmpiricalMetrics& m) {
  out << ',' << FormatDouble(m.bias_pos) << ',' << FormatDouble(m.bias_neg)
      << ',' << FormatDouble(m.error);
}

}  // namespace

std::vector<SweepRow> RunSweep(const SweepConfig& config) {
  if (config.grid.empty()) throw ConfigError("sweep grid is empty");
  const ProblemInstance& inst = ValidateInstance(config.instance);
  const double error_true =
      ErrorDerived(inst, DerivePredictor(inst, std::nullopt));
  std::vector<SweepRow> rows;
  rows.reserve(config.grid.size());
  for (double g10 : config.grid) {
    const PerturbationSpec spec = ScheduleEval(config.schedule, g10);
    const MetricsReport report = Evaluate(inst, spec);
    SweepRow row;
    row.gamma = spec.restricted;
    row.bias_pos_corr = report.bias_pos_derived;
    row.bias_neg_corr = report.bias_neg_derived;
    row.error_corr = report.error_derived;
    row.bias_pos_given = report.bias_pos_given;
    row.bias_neg_given = report.bias_neg_given;
    row.error_given = report.error_given;
    row.bound_pos = report.bound_pos;
    row.bound_neg = report.bound_neg;
    row.assumption_1b_pos = CheckAssumption1b(spec, 1);
    row.assumption_1b_neg = CheckAssumption1b(spec, -1);
    row.assumption_2 = CheckAssumption2(inst);
    row.error_vs_true = report.error_derived <= error_true + 1e-9;
    rows.push_back(row);
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "gamma10,gamma11,gammam10,gammam11,bias_pos_corr,bias_neg_corr,"
         "error_corr,bias_pos_given,bias_neg_given,error_given,bound_pos,"
         "bound_neg,assumption_1b_pos,assumption_1b_neg,assumption_2,"
         "error_vs_true_flag\n";
  for (const SweepRow& r : rows) {
    for (double g : r.gamma) out << FormatDouble(g) << ',';
    out << FormatDouble(r.bias_pos_corr) << ',' << FormatDouble(r.bias_neg_corr)
        << ',' << FormatDouble(r.error_corr) << ','
        << FormatDouble(r.bias_pos_given) << ','
        << FormatDouble(r.bias_neg_given) << ',' << FormatDouble(r.error_given)
        << ',' << Opt(r.bound_pos) << ',' << Opt(r.bound_neg) << ','
        << r.assumption_1b_pos << ',' << r.assumption_1b_neg << ','
        << r.assumption_2 << ',' << r.error_vs_true << '\n';
  }
}

std::vector<DatasetRow> RunDatasetExperiment(const RecordSet& records,
                                             const DatasetConfig& config) {
  records.Require(!config.scenario.has_value(), false, true);
  if (config.runs < 1) throw ConfigError("runs must be at least 1");
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0,1)");
  }
  std::vector<std::optional<double>> levels;
  if (config.scenario) {
    if (config.grid.empty()) throw ConfigError("dataset grid is empty");
    levels.assign(config.grid.begin(), config.grid.end());
  } else {
    levels.push_back(std::nullopt);
  }
  const double fractions[2] = {config.train_fraction,
                               1.0 - config.train_fraction};

  std::vector<DatasetRow> rows;
  for (const auto& level : levels) {
    DatasetRow row;
    row.level = level;
    for (int run = 0; run < config.runs; ++run) {
      const std::uint64_t run_seed =
          DeriveSeed(config.seed, static_cast<std::uint64_t>(run));
      RecordSet perturbed =
          config.scenario
              ? ApplyScenario(records, {*config.scenario, *level},
                              DeriveSeed(run_seed, kScenarioStream))
              : records;
      const auto parts =
          Split(perturbed, fractions, DeriveSeed(run_seed, kSplitStream));
      const RecordSet& train = parts[0];
      const RecordSet& test = parts[1];
      const DerivedPredictor pred_true = DeriveTruePredictor(train);
      const DerivedPredictor pred_corr = DeriveCorruptedPredictor(train);
      Accumulate(row.given,
                 EvaluatePredictorOnRecords(test, DerivedPredictor::Identity()));
      Accumulate(row.corr, EvaluatePredictorOnRecords(test, pred_corr));
      Accumulate(row.truth, EvaluatePredictorOnRecords(test, pred_true));
      row.independence += IndependenceMeasure(CountFourWayTable(test));
      std::size_t flips = 0;
      for (const Record& r : test.rows) flips += (*r.a_c != r.a);
      row.flip_rate += static_cast<double>(flips) /
                       static_cast<double>(test.size());
    }
    const double inv = 1.0 / config.runs;
    Scale(row.given, inv);
    Scale(row.corr, inv);
    Scale(row.truth, inv);
    row.independence *= inv;
    row.flip_rate *= inv;
    rows.push_back(row);
  }
  return rows;
}

void WriteDatasetCsv(std::ostream& out, const DatasetConfig& config,
                     const std::vector<DatasetRow>& rows) {
  out << "# rng=" << Rng::kAlgorithm << " seed=" << config.seed
      << " runs=" << config.runs << " scenario="
      << (config.scenario ? ScenarioName(*config.scenario) : "a_c-column")
      << " train_fraction=" << FormatDouble(config.train_fraction) << '\n';
  out << "level,flip_rate,bias_pos_given,bias_neg_given,error_given,"
         "bias_pos_corr,bias_neg_corr,error_corr,bias_pos_true,bias_neg_true,"
         "error_true,independence\n";
  for (const DatasetRow& r : rows) {
    out << Opt(r.level) << ',' << FormatDouble(r.flip_rate);
    WriteMetrics(out, r.given);
    WriteMetrics(out, r.corr);
    WriteMetrics(out, r.truth);
    out << ',' << FormatDouble(r.independence) << '\n';
  }
}

Lemma1Report ReproduceLemma1(Lemma1Mode mode, double flip) {
  Lemma1Report report;
  if (mode == Lemma1Mode::kAViolated) {
    report.instance = ProblemInstance::Balanced(0.65, 0.6, 0.0, 0.0);
    std::array<double, 8> general = {};
    general[TripleIndex(1, 0, -1)] = flip;
    report.spec = PerturbationSpec::General(general);
  } else {
    const Preset preset = *FindPreset("fig1-top-left");
    report.instance = ProblemInstance::Balanced(preset.alpha1, preset.beta1,
                                                preset.alpha2, preset.beta2);
    report.spec = ScheduleEval(preset.schedule, flip);
  }
  ValidatePerturbation(report.spec);
  report.predictor = DerivePredictor(report.instance, report.spec);
  report.bias_given = BiasGiven(report.instance, 1);
  report.bias_corr = BiasDerived(report.instance, report.predictor, 1);
  report.assumption_1a = CheckAssumption1a(report.spec).holds;
  // Assumption 1(b) concerns P[A_c != A | Y=1, A=a], marginalized over Yt.
  Vec4 marginal = {};
  for (int y : kLabels) {
    for (int a : kGroups) {
      const double rate = report.instance.PositiveRate(y, a);
      marginal[CellIndex(y, a)] = rate * report.spec.FlipRate(y, a, 1) +
                                  (1.0 - rate) * report.spec.FlipRate(y, a, -1);
    }
  }
  report.assumption_1b =
      CheckAssumption1b(PerturbationSpec::Restricted(marginal), 1);
  report.pass = report.bias_corr > report.bias_given;
  return report;
}

void PrintLemma1Report(std::ostream& out, const Lemma1Report& r) {
  const Vec4& p = r.predictor.p;
  out << "p_star (p10,p11,pm10,pm11) = " << FormatDouble(p[0]) << ' '
      << FormatDouble(p[1]) << ' ' << FormatDouble(p[2]) << ' '
      << FormatDouble(p[3]) << '\n'
      << "assumption_1a = " << r.assumption_1a << '\n'
      << "assumption_1b_pos = " << r.assumption_1b << '\n'
      << "bias_pos_given = " << FormatDouble(r.bias_given) << '\n'
      << "bias_pos_corr = " << FormatDouble(r.bias_corr) << '\n'
      << (r.pass ? "PASS" : "FAIL")
      << ": corrupted bias " << (r.pass ? "exceeds" : "does not exceed")
      << " the given bias\n";
}

void PrintEstimate(std::ostream& out, const RecordSet& records) {
  const InstanceEstimate est = EstimateInstance(records);
  const ProblemInstance& inst = est.instance;
  out << "# n = " << records.size() << ", cell counts (1,0) (1,1) (-1,0) (-1,1) ="
      << ' ' << est.cell_counts[0] << ' ' << est.cell_counts[1] << ' '
      << est.cell_counts[2] << ' ' << est.cell_counts[3] << '\n';
  out << "base = " << FormatDouble(inst.base[0]) << ", "
      << FormatDouble(inst.base[1]) << ", " << FormatDouble(inst.base[2])
      << ", " << FormatDouble(inst.base[3]) << '\n'
      << "alpha1 = " << FormatDouble(inst.alpha1) << '\n'
      << "beta1 = " << FormatDouble(inst.beta1) << '\n'
      << "alpha2 = " << FormatDouble(inst.alpha2) << '\n'
      << "beta2 = " << FormatDouble(inst.beta2) << '\n';
  if (!records.has_a_c) return;
  const FourWayTable table = CountFourWayTable(records);
  out << "# flip rates P[A_c != A | Y=y, A=a] (1,0) (1,1) (-1,0) (-1,1) =";
  for (int y : kLabels) {
    for (int a : kGroups) {
      double flipped = 0.0;
      double total = 0.0;
      for (int yt : kLabels) {
        flipped += table.At(y, a, yt, 1 - a);
        total += table.At(y, a, yt, 0) + table.At(y, a, yt, 1);
      }
      out << ' ' << FormatDouble(flipped / total);
    }
  }
  out << '\n'
      << "# independence measure = "
      << FormatDouble(IndependenceMeasure(table)) << '\n';
}

}  // namespace eopert
