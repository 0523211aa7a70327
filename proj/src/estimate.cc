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

#include "eopert/estimate.h"

#include <cmath>
#include <numeric>
#include <string>

#include "eopert/eo.h"
#include "eopert/errors.h"
#include "eopert/lp_engine.h"
#include "eopert/rng.h"

namespace eopert {
namespace {

std::string CellName(const char* attr, int y, int a) {
  return "(y=" + std::to_string(y) + ", " + attr + "=" + std::to_string(a) +
         ")";
}

}  // namespace

InstanceEstimate EstimateInstance(const RecordSet& records) {
  records.Require(false, false, true);
  InstanceEstimate est;
  std::array<std::size_t, 4> positives = {};
  for (const Record& r : records.rows) {
    ++est.cell_counts[CellIndex(r.y, r.a)];
    if (*r.yhat == 1) ++positives[CellIndex(r.y, r.a)];
  }
  for (int y : kLabels) {
    for (int a : kGroups) {
      if (est.cell_counts[CellIndex(y, a)] == 0) {
        throw ZeroCellError("no records in cell " + CellName("a", y, a));
      }
    }
  }
  const double n = static_cast<double>(records.size());
  Vec4 rate = {};
  for (std::size_t i = 0; i < 4; ++i) {
    est.instance.base[i] = static_cast<double>(est.cell_counts[i]) / n;
    rate[i] = static_cast<double>(positives[i]) /
              static_cast<double>(est.cell_counts[i]);
  }
  est.instance.alpha1 = rate[CellIndex(1, 0)];
  est.instance.beta1 = rate[CellIndex(1, 1)];
  est.instance.alpha2 = rate[CellIndex(-1, 0)];
  est.instance.beta2 = rate[CellIndex(-1, 1)];
  return est;
}

CorruptedTables EstimateCorruptedTables(const RecordSet& records) {
  records.Require(true, false, true);
  CorruptedTables out;
  std::array<std::size_t, 4> true_counts = {};
  std::size_t flips = 0;
  for (const Record& r : records.rows) {
    out.joint[TripleIndex(r.y, *r.a_c, *r.yhat)] += 1.0;
    ++out.corrupted_counts[CellIndex(r.y, *r.a_c)];
    ++true_counts[CellIndex(r.y, r.a)];
    out.table.At(r.y, r.a, *r.yhat, *r.a_c) += 1.0;
    flips += (*r.a_c != r.a);
  }
  for (int y : kLabels) {
    for (int a : kGroups) {
      if (out.corrupted_counts[CellIndex(y, a)] == 0) {
        throw ZeroCellError("no records in cell " + CellName("a_c", y, a));
      }
      if (true_counts[CellIndex(y, a)] == 0) {
        throw ZeroCellError("no records in cell " + CellName("a", y, a));
      }
    }
  }
  const double n = static_cast<double>(records.size());
  for (double& cell : out.joint) cell /= n;
  out.flip_rate = static_cast<double>(flips) / n;
  return out;
}

FourWayTable CountFourWayTable(const RecordSet& records) {
  records.Require(true, false, true);
  FourWayTable table;
  for (const Record& r : records.rows) table.At(r.y, r.a, *r.yhat, *r.a_c) += 1.0;
  return table;
}

DerivedPredictor DeriveTruePredictor(const RecordSet& train) {
  return DerivePredictor(EstimateInstance(train).instance);
}

DerivedPredictor DeriveCorruptedPredictor(const RecordSet& train) {
  const CorruptedTables tables = EstimateCorruptedTables(train);
  const EoProgram program = BuildProgramFromJoint(tables.joint);
  const LpSolution sol = Solve(program);
  DerivedPredictor out;
  out.p = sol.p_star;
  out.source = DerivedPredictor::Source::kCorrupted;
  out.tie_break_applied = sol.tie_break_applied;
  return out;
}

namespace {

// Metrics from per-record positive-prediction probabilities.
template <typename ProbFn>
EmpiricalMetrics Tally(const RecordSet& records, ProbFn prob) {
  std::array<double, 4> positive = {};
  std::array<std::size_t, 4> count = {};
  double wrong = 0.0;
  for (std::size_t i = 0; i < records.rows.size(); ++i) {
    const Record& r = records.rows[i];
    const double q = prob(i, r);
    positive[CellIndex(r.y, r.a)] += q;
    ++count[CellIndex(r.y, r.a)];
    wrong += r.y == 1 ? 1.0 - q : q;
  }
  for (int y : kLabels) {
    for (int a : kGroups) {
      if (count[CellIndex(y, a)] == 0) {
        throw ZeroCellError("no records in cell " + CellName("a", y, a));
      }
    }
  }
  auto rate = [&](int y, int a) {
    return positive[CellIndex(y, a)] /
           static_cast<double>(count[CellIndex(y, a)]);
  };
  EmpiricalMetrics m;
  m.bias_pos = std::abs(rate(1, 0) - rate(1, 1));
  m.bias_neg = std::abs(rate(-1, 0) - rate(-1, 1));
  m.error = wrong / static_cast<double>(records.size());
  return m;
}

}  // namespace

EmpiricalMetrics EvaluatePredictorOnRecords(const RecordSet& records,
                                            const DerivedPredictor& pred) {
  records.Require(false, false, true);
  return Tally(records, [&](std::size_t, const Record& r) {
    return pred.Prob(*r.yhat, r.a);
  });
}

SampledMetrics EvaluatePredictorSampled(const RecordSet& records,
                                        const DerivedPredictor& pred,
                                        int repetitions, std::uint64_t seed) {
  records.Require(false, false, true);
  if (repetitions < 2) throw RangeError("need at least two repetitions");
  Rng rng(seed);
  std::vector<EmpiricalMetrics> runs;
  runs.reserve(static_cast<std::size_t>(repetitions));
  for (int k = 0; k < repetitions; ++k) {
    runs.push_back(Tally(records, [&](std::size_t, const Record& r) {
      return rng.Bernoulli(pred.Prob(*r.yhat, r.a)) ? 1.0 : 0.0;
    }));
  }
  auto summarize = [&](double EmpiricalMetrics::*field, double& mean,
                       double& se) {
    double sum = 0.0;
    for (const auto& m : runs) sum += m.*field;
    mean = sum / repetitions;
    double ss = 0.0;
    for (const auto& m : runs) ss += (m.*field - mean) * (m.*field - mean);
    se = std::sqrt(ss / (repetitions - 1) / repetitions);
  };
  SampledMetrics out;
  summarize(&EmpiricalMetrics::bias_pos, out.mean.bias_pos,
            out.std_error.bias_pos);
  summarize(&EmpiricalMetrics::bias_neg, out.mean.bias_neg,
            out.std_error.bias_neg);
  summarize(&EmpiricalMetrics::error, out.mean.error, out.std_error.error);
  return out;
}

std::vector<RecordSet> Split(const RecordSet& records,
                             std::span<const double> fractions,
                             std::uint64_t seed) {
  if (fractions.empty()) throw RangeError("split needs at least one fraction");
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw RangeError("split fractions must be positive");
    total += f;
  }
  if (total > 1.0 + 1e-12) throw RangeError("split fractions sum above 1");

  const std::size_t n = records.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.Index(i)]);
  }

  std::vector<std::size_t> sizes;
  std::size_t used = 0;
  for (double f : fractions) {
    // The small offset keeps e.g. (1/3) * 9 from flooring to 2.
    const auto k = static_cast<std::size_t>(
        std::floor(f * static_cast<double>(n) + 1e-9));
    sizes.push_back(k);
    used += k;
  }
  if (used > n) throw RangeError("split fractions exceed the record count");
  if (std::abs(total - 1.0) <= 1e-12) sizes.back() += n - used;

  std::vector<RecordSet> out;
  std::size_t pos = 0;
  for (std::size_t k : sizes) {
    RecordSet part;
    part.has_a_c = records.has_a_c;
    part.has_score = records.has_score;
    part.has_yhat = records.has_yhat;
    part.rows.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      part.rows.push_back(records.rows[order[pos + i]]);
    }
    pos += k;
    out.push_back(std::move(part));
  }
  return out;
}

RecordSet SampleRecords(const ProblemInstance& inst,
                        const PerturbationSpec& spec, std::size_t n,
                        std::uint64_t seed, bool with_score) {
  ValidateInstance(inst);
  ValidatePerturbation(spec);
  Rng rng(seed);
  RecordSet out;
  out.has_a_c = true;
  out.has_yhat = true;
  out.has_score = with_score;
  out.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    double acc = 0.0;
    std::size_t cell = 3;
    for (std::size_t c = 0; c < 4; ++c) {
      acc += inst.base[c];
      if (u < acc) {
        cell = c;
        break;
      }
    }
    Record r;
    r.y = cell < 2 ? 1 : -1;
    r.a = static_cast<int>(cell % 2);
    const int yhat = rng.Bernoulli(inst.PositiveRate(r.y, r.a)) ? 1 : -1;
    r.yhat = yhat;
    const bool flip = rng.Bernoulli(spec.FlipRate(r.y, r.a, yhat));
    r.a_c = flip ? 1 - r.a : r.a;
    if (with_score) {
      const double v = rng.Uniform();
      r.score = yhat == 1 ? 1.0 - 0.5 * v : 0.5 * v;
    }
    out.rows.push_back(r);
  }
  return out;
}

}  // namespace eopert
