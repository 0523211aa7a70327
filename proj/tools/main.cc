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

// Command-line front end: sweeps, dataset experiments, the F bound, the
// Lemma 1 counterexamples and plug-in estimation from record files.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "eopert/config.h"
#include "eopert/errors.h"
#include "eopert/estimate.h"
#include "eopert/experiments.h"
#include "eopert/metrics.h"
#include "eopert/perturb.h"
#include "eopert/records.h"
#include "eopert/text.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

using eopert::ConfigError;

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void WithOutput(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  fn(out);
  out.flush();
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::map<std::string, std::string> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return eopert::ParseKeyValues(in);
}

struct SweepArgs {
  std::string config;
  std::string preset;
  std::string base;
  std::string schedule;
  std::string grid;
  std::string out;
};

int RunSweepCommand(const SweepArgs& args) {
  std::map<std::string, std::string> kv;
  if (!args.config.empty()) kv = ReadConfigFile(args.config);
  if (!args.preset.empty()) kv["preset"] = args.preset;
  if (!args.base.empty()) kv["base"] = args.base;
  if (!args.schedule.empty()) kv["schedule"] = args.schedule;
  eopert::SweepConfig cfg = eopert::BuildSweepConfig(kv);
  if (!args.grid.empty()) cfg.grid = eopert::ParseGrid(args.grid);
  if (!args.out.empty()) cfg.output = args.out;
  const auto rows = eopert::RunSweep(cfg);
  WithOutput(cfg.output, [&](std::ostream& os) {
    eopert::WriteSweepCsv(os, rows);
  });
  return 0;
}

struct DatasetArgs {
  std::string records;
  std::string scenario;
  std::string grid;
  std::uint64_t seed = 0;
  int runs = 1;
  double train_fraction = 0.5;
  std::string out;
};

int RunDatasetCommand(const DatasetArgs& args) {
  eopert::DatasetConfig cfg;
  cfg.seed = args.seed;
  cfg.runs = args.runs;
  cfg.train_fraction = args.train_fraction;
  if (!args.scenario.empty() && args.scenario != "none") {
    cfg.scenario = eopert::ParseScenarioKind(args.scenario);
    if (!cfg.scenario) {
      throw ConfigError("unknown scenario '" + args.scenario + "'");
    }
    if (args.grid.empty()) throw ConfigError("--grid is required with --scenario");
    cfg.grid = eopert::ParseGrid(args.grid);
  } else if (!args.grid.empty()) {
    throw ConfigError("--grid needs --scenario");
  }
  const eopert::RecordSet records = eopert::ReadRecordCsvFile(args.records);
  const auto rows = eopert::RunDatasetExperiment(records, cfg);
  WithOutput(args.out, [&](std::ostream& os) {
    eopert::WriteDatasetCsv(os, cfg, rows);
  });
  return 0;
}

struct SampleArgs {
  std::string config;
  std::string preset;
  std::string base;
  double gamma = 0.0;
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  bool with_score = false;
  std::string out;
};

int RunSampleCommand(const SampleArgs& args) {
  std::map<std::string, std::string> kv;
  if (!args.config.empty()) kv = ReadConfigFile(args.config);
  if (!args.preset.empty()) kv["preset"] = args.preset;
  if (!args.base.empty()) kv["base"] = args.base;
  if (!kv.contains("schedule") && !kv.contains("preset")) {
    kv["schedule"] = "equal";
  }
  const eopert::SweepConfig cfg = eopert::BuildSweepConfig(kv);
  const eopert::PerturbationSpec spec =
      eopert::ScheduleEval(cfg.schedule, args.gamma);
  const eopert::RecordSet records = eopert::SampleRecords(
      cfg.instance, spec, args.n, args.seed, args.with_score);
  WithOutput(args.out, [&](std::ostream& os) {
    eopert::WriteRecordCsv(os, records);
  });
  return 0;
}

eopert::Lemma1Mode ParseMode(const std::string& mode) {
  if (mode == "a_violated" || mode == "a-violated") {
    return eopert::Lemma1Mode::kAViolated;
  }
  if (mode == "b_violated" || mode == "b-violated") {
    return eopert::Lemma1Mode::kBViolated;
  }
  throw ConfigError("unknown mode '" + mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equalized-odds postprocessing under a corrupted protected "
               "attribute"};
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a gamma schedule");
  sweep_cmd->add_option("--config", sweep.config, "Key-value config file");
  sweep_cmd->add_option("--preset", sweep.preset, "Named preset");
  sweep_cmd->add_option("--base", sweep.base,
                        "P[Y=y,A=a] as four values, or 'balanced'");
  sweep_cmd->add_option("--schedule", sweep.schedule,
                        "equal, halves, power-halving or capped");
  sweep_cmd->add_option("--grid", sweep.grid, "start:stop:step or a list");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV (default stdout)");

  DatasetArgs dataset;
  auto* dataset_cmd =
      app.add_subcommand("dataset", "Run the pipeline on a record file");
  dataset_cmd->add_option("--records", dataset.records, "Record CSV")
      ->required();
  dataset_cmd->add_option("--scenario", dataset.scenario,
                          "independent, score-band, independent-errors, "
                          "score-band-errors, or none to use a_c");
  dataset_cmd->add_option("--grid", dataset.grid, "Perturbation levels");
  dataset_cmd->add_option("--seed", dataset.seed, "Seed for splits and flips");
  dataset_cmd->add_option("--runs", dataset.runs, "Repetitions to average")
      ->check(CLI::PositiveNumber);
  dataset_cmd->add_option("--train-fraction", dataset.train_fraction,
                          "Share of records used for training");
  dataset_cmd->add_option("--out", dataset.out, "Output CSV (default stdout)");

  double g1 = 0.0;
  double g2 = 0.0;
  double p = 0.0;
  auto* bound_cmd = app.add_subcommand("bound", "Print F(gamma1, gamma2, p)");
  bound_cmd->add_option("gamma1", g1)->required();
  bound_cmd->add_option("gamma2", g2)->required();
  bound_cmd->add_option("p", p)->required();

  std::string mode = "a_violated";
  std::optional<double> flip;
  auto* lemma_cmd = app.add_subcommand(
      "reproduce-lemma1", "Counterexamples where corruption raises the bias");
  lemma_cmd->add_option("--mode", mode, "a_violated or b_violated");
  lemma_cmd->add_option("--flip", flip,
                        "Flip probability (defaults 0.15 and 0.7)");

  std::string estimate_path;
  auto* estimate_cmd =
      app.add_subcommand("estimate", "Estimate an instance from records");
  estimate_cmd->add_option("--records", estimate_path, "Record CSV")
      ->required();

  SampleArgs sample;
  auto* sample_cmd =
      app.add_subcommand("sample", "Draw synthetic records from an instance");
  sample_cmd->add_option("--config", sample.config, "Key-value config file");
  sample_cmd->add_option("--preset", sample.preset, "Named preset");
  sample_cmd->add_option("--base", sample.base, "P[Y=y,A=a] or 'balanced'");
  sample_cmd->add_option("--gamma", sample.gamma, "gamma_{1,0} of the schedule");
  sample_cmd->add_option("-n", sample.n, "Number of records");
  sample_cmd->add_option("--seed", sample.seed, "Sampling seed");
  sample_cmd->add_flag("--with-score", sample.with_score, "Emit a score column");
  sample_cmd->add_option("--out", sample.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep_cmd) return RunSweepCommand(sweep);
    if (*dataset_cmd) return RunDatasetCommand(dataset);
    if (*sample_cmd) return RunSampleCommand(sample);
    if (*bound_cmd) {
      std::cout << eopert::FormatDouble(eopert::BoundF(g1, g2, p)) << '\n';
      return 0;
    }
    if (*lemma_cmd) {
      const eopert::Lemma1Mode m = ParseMode(mode);
      const double f =
          flip.value_or(m == eopert::Lemma1Mode::kAViolated ? 0.15 : 0.7);
      eopert::PrintLemma1Report(std::cout, eopert::ReproduceLemma1(m, f));
      return 0;
    }
    if (*estimate_cmd) {
      eopert::PrintEstimate(std::cout,
                            eopert::ReadRecordCsvFile(estimate_path));
      return 0;
    }
  } catch (const eopert::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const eopert::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const eopert::MissingColumnError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const eopert::ZeroCellError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const eopert::EmptyCellError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const eopert::Error& e) {
    // Domain and range violations come from user-supplied values.
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
