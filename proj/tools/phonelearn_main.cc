// tools/phonelearn_main.cc

// Copyright 2026  Phonelearn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI11.hpp>

#include "cli/config.h"
#include "cli/pipeline.h"
#include "corpus/synth.h"
#include "stats/feature_table.h"
#include "util/error.h"

namespace pl = phonelearn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  int workers = -1;
};

void AddCommon(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "experiment config JSON")
      ->required();
  cmd->add_option("--set", args->overrides,
                  "override config values, key.path=value");
  cmd->add_option("--workers", args->workers,
                  "worker threads (results are worker-count invariant)");
}

pl::ExperimentConfig LoadConfig(const CommonArgs& args) {
  auto cfg = pl::LoadExperimentConfig(args.config_path, args.overrides);
  if (args.workers >= 0) cfg.workers = args.workers;
  return cfg;
}

std::vector<std::pair<std::string, std::string>> ParseContrasts(
    const std::vector<std::string>& specs) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : specs) {
    auto dash = s.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == s.size())
      throw pl::UsageError("contrast must look like phoneA-phoneB, got '" +
                           s + "'");
    out.emplace_back(s.substr(0, dash), s.substr(dash + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "phonelearn: train unsupervised speech representation models on two "
      "languages and measure phone discrimination with the machine ABX task"};
  app.require_subcommand(1);

  // --- synth ---
  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic corpus from a synth config JSON");
  std::string synth_config, synth_out;
  uint64_t synth_seed = 0;
  synth->add_option("--config", synth_config, "synth config JSON")->required();
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--seed", synth_seed, "generation seed")->required();

  // --- features ---
  auto* features = app.add_subcommand(
      "features", "compute 39-d features for every manifest in the config");
  CommonArgs features_args;
  AddCommon(features, &features_args);

  // --- train ---
  auto* train = app.add_subcommand(
      "train", "train the configured model for one language role");
  CommonArgs train_args;
  std::string train_role;
  AddCommon(train, &train_args);
  train->add_option("--role", train_role, "native or nonnative")->required();

  // --- abx ---
  auto* abx = app.add_subcommand(
      "abx", "ABX-score a checkpoint on the config's test manifests");
  CommonArgs abx_args;
  std::string abx_checkpoint, abx_report;
  AddCommon(abx, &abx_args);
  abx->add_option("--checkpoint", abx_checkpoint, "model checkpoint")
      ->required();
  abx->add_option("--report", abx_report, "output report JSON path")
      ->required();

  // --- compare ---
  auto* compare = app.add_subcommand(
      "compare", "native-vs-non-native significance test over two reports");
  CommonArgs compare_args;
  std::string native_report, nonnative_report, compare_out;
  AddCommon(compare, &compare_args);
  compare->add_option("--native", native_report, "native ABX report JSON")
      ->required();
  compare
      ->add_option("--nonnative", nonnative_report,
                   "non-native ABX report JSON")
      ->required();
  compare->add_option("--out", compare_out, "significance report JSON path")
      ->required();

  // --- table3 ---
  auto* table3 = app.add_subcommand(
      "table3",
      "per-contrast standard-score differences between two checkpoints");
  CommonArgs table3_args;
  std::string ckpt1, ckpt2, table3_out, feature_table_path;
  std::vector<std::string> contrast_specs;
  AddCommon(table3, &table3_args);
  table3->add_option("--checkpoint-a", ckpt1, "first model checkpoint")
      ->required();
  table3->add_option("--checkpoint-b", ckpt2, "second model checkpoint")
      ->required();
  table3->add_option("--contrasts", contrast_specs,
                     "contrasts as phoneA-phoneB (repeatable)");
  table3->add_option("--feature-table", feature_table_path,
                     "phonological feature CSV; contrasts become all "
                     "one-feature minimal pairs");
  table3->add_option("--out", table3_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      auto cfg = pl::SynthConfigFromJsonFile(synth_config);
      auto out = pl::SynthGenerate(cfg, synth_out, synth_seed);
      std::cerr << "[synth] wrote " << out.manifest.utterances.size()
                << " utterances for language " << cfg.language << " ("
                << cfg.subset << ") under " << synth_out << "\n";
      return kExitOk;
    }
    if (features->parsed()) {
      pl::RunFeaturesStage(LoadConfig(features_args));
      return kExitOk;
    }
    if (train->parsed()) {
      auto out = pl::RunTrainStage(LoadConfig(train_args), train_role);
      std::cerr << "[train] checkpoint: " << out.checkpoint.string() << "\n";
      return kExitOk;
    }
    if (abx->parsed()) {
      auto report = pl::RunAbxStage(LoadConfig(abx_args), abx_checkpoint,
                                    abx_report);
      std::cout << "aggregate_error=" << report.aggregate_error
                << " n_triplets=" << report.n_triplets
                << (report.untestable ? " untestable" : "") << "\n";
      return kExitOk;
    }
    if (compare->parsed()) {
      auto outcome = pl::RunCompareStage(LoadConfig(compare_args),
                                         native_report, nonnative_report,
                                         compare_out);
      std::cout << "verdict=" << outcome.verdict
                << " statistic=" << outcome.test.observed
                << " p=" << outcome.test.p_value << "\n";
      return kExitOk;
    }
    if (table3->parsed()) {
      auto cfg = LoadConfig(table3_args);
      auto contrasts = ParseContrasts(contrast_specs);
      if (!feature_table_path.empty()) {
        auto table = pl::LoadFeatureTable(feature_table_path);
        for (const auto& c : pl::MinimalPairContrasts(table))
          contrasts.emplace_back(c.first, c.second);
      }
      pl::RunTable3Stage(cfg, ckpt1, ckpt2, contrasts, table3_out);
      std::cerr << "[table3] wrote " << table3_out << "\n";
      return kExitOk;
    }
  } catch (const pl::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pl::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const pl::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
