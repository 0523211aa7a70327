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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eopert/config.h"
#include "eopert/eo.h"
#include "eopert/errors.h"
#include "eopert/estimate.h"
#include "eopert/experiments.h"
#include "eopert/metrics.h"
#include "eopert/text.h"
#include "gtest/gtest.h"

namespace eopert {
namespace {

std::map<std::string, std::string> Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseKeyValues(in);
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(TextTest, FormatDouble) {
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(FormatDouble(-0.0), "0");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1.0 / 3), "0.333333333333");
  EXPECT_EQ(FormatDouble(2e-17), "2e-17");
  EXPECT_EQ(ParseDouble("0.25"), 0.25);
  EXPECT_FALSE(ParseDouble("0.25x").has_value());
  EXPECT_FALSE(ParseDouble("").has_value());
  EXPECT_EQ(ParseInt("+1"), 1);
  EXPECT_EQ(ParseInt("-1"), -1);
  EXPECT_FALSE(ParseInt("1.0").has_value());
}

TEST(PresetTest, FigureAndTablePresets) {
  const auto tl = FindPreset("fig1-top-left");
  ASSERT_TRUE(tl.has_value());
  EXPECT_EQ(tl->alpha1, 0.9);
  EXPECT_EQ(tl->beta1, 0.8);
  EXPECT_EQ(tl->alpha2, 0.4);
  EXPECT_EQ(tl->beta2, 0.1);
  EXPECT_EQ(tl->schedule, ScheduleKind::kEqual);
  EXPECT_EQ(FindPreset("fig1-bottom-left")->schedule, ScheduleKind::kPowerHalving);
  EXPECT_EQ(FindPreset("tableA3-row-4")->schedule, ScheduleKind::kCapped);
  EXPECT_EQ(FindPreset("tableA3-row-14")->alpha1, 0.6);
  EXPECT_EQ(FindPreset("tableA4-row-3")->alpha1, 1.0);
  EXPECT_FALSE(FindPreset("tableA3-row-15").has_value());
  for (const Preset& p : AllPresets()) {
    EXPECT_NO_THROW(ValidateInstance(
        ProblemInstance::Balanced(p.alpha1, p.beta1, p.alpha2, p.beta2)))
        << p.name;
  }
}

TEST(GridTest, RangeAndList) {
  const auto g = ParseGrid("0:0.5:0.05");
  ASSERT_EQ(g.size(), 11u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_DOUBLE_EQ(g[3], 0.15);
  EXPECT_EQ(g.back(), 0.5);
  EXPECT_EQ(ParseGrid("0, 0.2,0.7"), (std::vector<double>{0.0, 0.2, 0.7}));
  EXPECT_EQ(ParseGrid("0"), (std::vector<double>{0.0}));
  EXPECT_EQ(GridPoints(0.1, 0.35, 0.1).size(), 3u);
}

TEST(GridTest, Errors) {
  for (const char* bad : {"0:1:0", "0:1:-0.1", "0.5:0.2:0.1", "0:1.5:0.1", "-0.1:1:0.1",
                          "0:1", "1.2", "0,abc", ""}) {
    EXPECT_THROW(ParseGrid(bad), ConfigError) << bad;
  }
}

TEST(ConfigTest, KeyValues) {
  const auto kv = Parse("# sweep\npreset = fig1-top-left  # trailing\n\nbase=balanced\n");
  EXPECT_EQ(kv.at("preset"), "fig1-top-left");
  EXPECT_EQ(kv.at("base"), "balanced");
  EXPECT_THROW(Parse("preset = a\npreset = b\n"), ConfigError);
  EXPECT_THROW(Parse("no equals sign\n"), ConfigError);
}

TEST(ConfigTest, BuildFromPresetAndOverrides) {
  const SweepConfig cfg = BuildSweepConfig(Parse(
      "preset = fig1-top-right\nbase = 0.1, 0.2, 0.3, 0.4\nbeta2 = 0.2\n"
      "schedule = capped\ngrid_start = 0\ngrid_stop = 0.2\ngrid_step = 0.1\n"
      "output = out.csv\n"));
  EXPECT_EQ(cfg.instance.alpha1, 0.9);
  EXPECT_EQ(cfg.instance.beta2, 0.2);
  EXPECT_EQ(cfg.instance.base, (Vec4{0.1, 0.2, 0.3, 0.4}));
  EXPECT_EQ(cfg.schedule, ScheduleKind::kCapped);
  EXPECT_EQ(cfg.grid.size(), 3u);
  EXPECT_EQ(cfg.output, "out.csv");
}

TEST(ConfigTest, Errors) {
  const char* bad[] = {
      "preset = fig1-top-left\nbase = balanced\ngama = 0.1\n",   // unknown key
      "preset = fig1-top-left\n",                                  // no base
      "preset = nope\nbase = balanced\n",                          // unknown preset
      "base = balanced\nalpha1 = 0.9\nbeta1 = 0.8\nalpha2 = 0.4\nschedule = equal\n",
      "base = balanced\nalpha1=0.9\nbeta1=0.8\nalpha2=0.4\nbeta2=0.1\n",  // no schedule
      "preset = fig1-top-left\nbase = balanced\nschedule = cubic\n",
      "preset = fig1-top-left\nbase = 0.5, 0.5\n",
      "preset = fig1-top-left\nbase = 0.5, 0.5, 0, 0\n",         // zero cell
      "preset = fig1-top-left\nbase = 0.3, 0.3, 0.3, 0.3\n",     // not normalized
      "preset = fig1-top-left\nbase = balanced\nalpha1 = 1.5\n",
      "preset = fig1-top-left\nbase = balanced\nalpha1 = x\n",
      "preset = fig1-top-left\nbase = balanced\ngrid_start = 0\n",
      "preset = fig1-top-left\nbase = balanced\ngrid_start = 0\ngrid_stop = 1\n"
      "grid_step = 0\n",
  };
  for (const char* text : bad) {
    EXPECT_THROW(BuildSweepConfig(Parse(text)), ConfigError) << text;
  }
}

SweepConfig TopLeftSweep(const std::vector<double>& grid) {
  SweepConfig cfg;
  cfg.instance = ProblemInstance::Balanced(0.9, 0.8, 0.4, 0.1);
  cfg.schedule = ScheduleKind::kEqual;
  cfg.grid = grid;
  return cfg;
}

TEST(SweepTest, ZeroPerturbationRow) {
  const auto rows = RunSweep(TopLeftSweep({0.0}));
  ASSERT_EQ(rows.size(), 1u);
  const ProblemInstance inst = ProblemInstance::Balanced(0.9, 0.8, 0.4, 0.1);
  EXPECT_NEAR(rows[0].bias_pos_corr, 0.0, 1e-12);
  EXPECT_NEAR(rows[0].error_corr, ErrorDerived(inst, DerivePredictor(inst)), 1e-15);
  EXPECT_TRUE(rows[0].error_vs_true);
  EXPECT_EQ(*rows[0].bound_pos, 0.0);
}

TEST(SweepTest, TopLeftBiasBelowGiven) {
  const auto rows = RunSweep(TopLeftSweep(GridPoints(0, 0.49, 0.01)));
  for (const SweepRow& r : rows) {
    ASSERT_LT(r.gamma[0] + r.gamma[1], 1.0);
    EXPECT_LE(r.bias_pos_corr, r.bias_pos_given + 1e-12);
  }
}

TEST(SweepTest, HalfFlipMatchesGivenClassifier) {
  const SweepRow r = RunSweep(TopLeftSweep({0.5}))[0];
  EXPECT_NEAR(r.bias_pos_corr, r.bias_pos_given, 1e-12);
  EXPECT_NEAR(r.bias_neg_corr, r.bias_neg_given, 1e-12);
  EXPECT_NEAR(r.error_corr, r.error_given, 1e-12);
}

TEST(SweepTest, RowsRespectBoundWhenAssumptionsHold) {
  for (const Preset& p : AllPresets()) {
    SweepConfig cfg;
    cfg.instance = ProblemInstance::Balanced(p.alpha1, p.beta1, p.alpha2, p.beta2);
    cfg.instance.base = {0.3, 0.15, 0.2, 0.35};
    cfg.schedule = p.schedule;
    cfg.grid = GridPoints(0, 0.95, 0.05);
    for (const SweepRow& r : RunSweep(cfg)) {
      if (r.bound_pos && r.assumption_1b_pos) {
        EXPECT_LE(r.bias_pos_corr, *r.bound_pos + 1e-9) << p.name;
      }
      if (r.bound_neg && r.assumption_1b_neg) {
        EXPECT_LE(r.bias_neg_corr, *r.bound_neg + 1e-9) << p.name;
      }
    }
  }
}

TEST(SweepTest, CsvLayoutAndDeterminism) {
  SweepConfig cfg = TopLeftSweep(GridPoints(0, 1, 0.25));
  cfg.schedule = ScheduleKind::kCapped;
  std::ostringstream a;
  std::ostringstream b;
  WriteSweepCsv(a, RunSweep(cfg));
  WriteSweepCsv(b, RunSweep(cfg));
  EXPECT_EQ(a.str(), b.str());
  const auto lines = Lines(a.str());
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0],
            "gamma10,gamma11,gammam10,gammam11,bias_pos_corr,bias_neg_corr,"
            "error_corr,bias_pos_given,bias_neg_given,error_given,bound_pos,"
            "bound_neg,assumption_1b_pos,assumption_1b_neg,assumption_2,"
            "error_vs_true_flag");
  for (const std::string& line : lines) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 15) << line;
  }
  // gamma10 = 1 leaves the bound undefined: empty fields, not NaN.
  EXPECT_EQ(lines[5].rfind("1,1,0.8,0.8,", 0), 0u) << lines[5];
  EXPECT_NE(lines[5].find(",,,"), std::string::npos);
  EXPECT_EQ(lines[5].find("nan"), std::string::npos);
}

TEST(SweepTest, EmptyGridIsConfigError) {
  EXPECT_THROW(RunSweep(TopLeftSweep({})), ConfigError);
}

TEST(Lemma1Test, BothModesPass) {
  const Lemma1Report a = ReproduceLemma1(Lemma1Mode::kAViolated, 0.15);
  EXPECT_TRUE(a.pass);
  EXPECT_FALSE(a.assumption_1a);
  EXPECT_TRUE(a.assumption_1b);
  EXPECT_NEAR(a.bias_given, 0.05, 1e-15);
  EXPECT_NEAR(a.bias_corr, 0.06, 0.01);
  const Lemma1Report b = ReproduceLemma1(Lemma1Mode::kBViolated, 0.7);
  EXPECT_TRUE(b.pass);
  EXPECT_TRUE(b.assumption_1a);
  EXPECT_FALSE(b.assumption_1b);
  EXPECT_GT(b.bias_corr, b.bias_given);
}

TEST(Lemma1Test, ZeroFlipControlFails) {
  const Lemma1Report r = ReproduceLemma1(Lemma1Mode::kAViolated, 0.0);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.bias_corr, 0.0, 1e-12);
  std::ostringstream out;
  PrintLemma1Report(out, r);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}

RecordSet Synthetic(std::size_t n, std::uint64_t seed) {
  return SampleRecords(ProblemInstance::Balanced(0.9, 0.8, 0.4, 0.1),
                       PerturbationSpec::Zero(), n, seed, true);
}

TEST(DatasetTest, ZeroFlipGivesTrueMetrics) {
  DatasetConfig cfg;
  cfg.scenario = RecordScenario::Kind::kIndependentFlip;
  cfg.grid = {0.0};
  cfg.seed = 5;
  const DatasetRow row = RunDatasetExperiment(Synthetic(20000, 1), cfg)[0];
  EXPECT_EQ(row.flip_rate, 0.0);
  EXPECT_EQ(row.corr.bias_pos, row.truth.bias_pos);
  EXPECT_EQ(row.corr.bias_neg, row.truth.bias_neg);
  EXPECT_EQ(row.corr.error, row.truth.error);
}

TEST(DatasetTest, OnErrorsScenarioBreaksIndependence) {
  DatasetConfig cfg;
  cfg.scenario = RecordScenario::Kind::kIndependentFlipOnErrors;
  cfg.grid = {0.3};
  const DatasetRow row = RunDatasetExperiment(Synthetic(50000, 2), cfg)[0];
  EXPECT_GT(row.independence, 0.05);
  cfg.scenario = RecordScenario::Kind::kIndependentFlip;
  EXPECT_LT(RunDatasetExperiment(Synthetic(50000, 2), cfg)[0].independence, 0.02);
}

TEST(DatasetTest, CsvDeterministicAndAveraged) {
  DatasetConfig cfg;
  cfg.scenario = RecordScenario::Kind::kScoreBandFlip;
  cfg.grid = {0.0, 0.1, 0.2};
  cfg.seed = 77;
  cfg.runs = 3;
  const RecordSet rs = Synthetic(6000, 3);
  std::ostringstream a;
  std::ostringstream b;
  WriteDatasetCsv(a, cfg, RunDatasetExperiment(rs, cfg));
  WriteDatasetCsv(b, cfg, RunDatasetExperiment(rs, cfg));
  EXPECT_EQ(a.str(), b.str());
  const auto lines = Lines(a.str());
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "# rng=mt19937_64 seed=77 runs=3 scenario=score-band train_fraction=0.5");
  EXPECT_EQ(lines[1].rfind("level,flip_rate,", 0), 0u);
  cfg.seed = 78;
  std::ostringstream c;
  WriteDatasetCsv(c, cfg, RunDatasetExperiment(rs, cfg));
  EXPECT_NE(Lines(c.str())[2], lines[2]);
}

TEST(DatasetTest, Errors) {
  DatasetConfig cfg;
  const RecordSet rs = Synthetic(1000, 4);
  RecordSet no_ac = rs;
  no_ac.has_a_c = false;
  for (Record& r : no_ac.rows) r.a_c.reset();
  EXPECT_THROW(RunDatasetExperiment(no_ac, cfg), MissingColumnError);
  EXPECT_NO_THROW(RunDatasetExperiment(rs, cfg));
  cfg.runs = 0;
  EXPECT_THROW(RunDatasetExperiment(rs, cfg), ConfigError);
  cfg.runs = 1;
  cfg.scenario = RecordScenario::Kind::kIndependentFlip;
  EXPECT_THROW(RunDatasetExperiment(rs, cfg), ConfigError);
}

TEST(EstimatePrintTest, ConfigSyntax) {
  const RecordSet rs = SampleRecords(ProblemInstance::Balanced(0.9, 0.8, 0.4, 0.1),
                                     PerturbationSpec::Uniform(0.2), 4000, 6);
  std::ostringstream out;
  PrintEstimate(out, rs);
  std::istringstream in(out.str());
  auto kv = ParseKeyValues(in);
  kv["schedule"] = "equal";
  const SweepConfig cfg = BuildSweepConfig(kv);
  EXPECT_NEAR(cfg.instance.alpha1, 0.9, 0.05);
  EXPECT_NE(out.str().find("independence measure"), std::string::npos);
}

#ifdef EOPERT_TOOL_PATH
int RunTool(const std::string& args) {
  const std::string cmd = std::string(EOPERT_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("eopert_cli_test_" + name)).string();
}

TEST(ToolTest, ExitCodes) {
  EXPECT_EQ(RunTool("bound 0.2 0.3 0.5"), 0);
  EXPECT_EQ(RunTool("bound 1 0.3 0.5"), 2);
  EXPECT_EQ(RunTool("sweep --preset fig1-top-left --grid 0:0.5:0.1"), 2);
  EXPECT_EQ(RunTool("sweep --preset fig1-top-left --base balanced --grid 0:0.5:0.1"), 0);
  EXPECT_EQ(RunTool("sweep --preset fig1-top-left --base balanced --grid 0:2:0.1"), 2);
  EXPECT_EQ(RunTool("no-such-command"), 2);
  EXPECT_EQ(RunTool("reproduce-lemma1 --mode b_violated"), 0);
  EXPECT_EQ(RunTool("reproduce-lemma1 --mode c_violated"), 2);
  EXPECT_EQ(RunTool("estimate --records /nonexistent.csv"), 3);
  const std::string bad = TempPath("bad.csv");
  std::ofstream(bad) << "y,a\n1,7\n";
  EXPECT_EQ(RunTool("estimate --records " + bad), 3);
  std::remove(bad.c_str());
}

TEST(ToolTest, SweepOutputIsByteDeterministic) {
  const std::string cfg_path = TempPath("sweep.cfg");
  std::ofstream(cfg_path) << "preset = fig1-top-right\nbase = balanced\n"
                             "grid_start = 0\ngrid_stop = 0.9\ngrid_step = 0.1\n";
  const std::string a = TempPath("a.csv");
  const std::string b = TempPath("b.csv");
  ASSERT_EQ(RunTool("sweep --config " + cfg_path + " --out " + a), 0);
  ASSERT_EQ(RunTool("sweep --config " + cfg_path + " --out " + b), 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(Lines(slurp(a)).size(), 11u);
  for (const auto& p : {cfg_path, a, b}) std::remove(p.c_str());
}

TEST(ToolTest, DatasetRoundTrip) {
  const std::string records = TempPath("records.csv");
  const std::string out1 = TempPath("d1.csv");
  const std::string out2 = TempPath("d2.csv");
  ASSERT_EQ(RunTool("sample --preset fig1-top-left --base balanced -n 5000 --seed 3 "
                    "--with-score --out " + records), 0);
  const std::string args = "dataset --records " + records +
                           " --scenario score-band --grid 0,0.1 --seed 9 --runs 2 --out ";
  ASSERT_EQ(RunTool(args + out1), 0);
  ASSERT_EQ(RunTool(args + out2), 0);
  std::ifstream i1(out1), i2(out2);
  const std::string s1((std::istreambuf_iterator<char>(i1)), {});
  const std::string s2((std::istreambuf_iterator<char>(i2)), {});
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(Lines(s1).size(), 4u);
  EXPECT_EQ(RunTool("dataset --records " + records + " --scenario bogus --grid 0"), 2);
  EXPECT_EQ(RunTool("estimate --records " + records), 0);
  for (const auto& p : {records, out1, out2}) std::remove(p.c_str());
}
#endif

}  // namespace
}  // namespace eopert
