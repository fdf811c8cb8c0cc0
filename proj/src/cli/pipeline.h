// cli/pipeline.h

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

#ifndef PHONELEARN_CLI_PIPELINE_H_
#define PHONELEARN_CLI_PIPELINE_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "abx/report.h"
#include "cli/config.h"
#include "corpus/types.h"
#include "features/feature_seq.h"
#include "stats/permutation.h"

namespace phonelearn {

// Per-manifest features keyed by utterance id.
struct FeatureStore {
  std::map<std::string, FeatureSequence> sequences;

  const FeatureSequence& Get(const std::string& utterance) const;
};

// Computes (or loads, when the cache matches) the 39-d feature archive of a
// manifest. The cache key covers the audio bytes and the feature settings;
// a warm rerun does no signal processing. Missing or corrupt audio files are
// collected and reported together.
FeatureStore ComputeOrLoadFeatures(const ExperimentConfig& config,
                                   const std::filesystem::path& manifest_path,
                                   bool* recomputed = nullptr);

// `features` subcommand over every manifest in the config.
void RunFeaturesStage(const ExperimentConfig& config);

struct TrainOutput {
  std::filesystem::path checkpoint;
  std::filesystem::path metadata;
  std::filesystem::path train_log;
};

// `train` for the given role ("native" or "nonnative"): dispatches on the
// configured model, writes checkpoint + metadata + training log.
TrainOutput RunTrainStage(const ExperimentConfig& config,
                          const std::string& role);

// ABX evaluation of one checkpoint over the config's test manifests and
// contrast; writes report JSON plus per-cell and triplet CSVs next to it.
AbxReport RunAbxStage(const ExperimentConfig& config,
                      const std::filesystem::path& checkpoint,
                      const std::filesystem::path& report_path);

struct CompareOutcome {
  NativeAdvantageResult test;
  std::string verdict;  // infant-like | no-difference | wrong-direction
};

CompareOutcome RunCompareStage(const ExperimentConfig& config,
                               const std::filesystem::path& native_report,
                               const std::filesystem::path& nonnative_report,
                               const std::filesystem::path& out_path);

// Per-contrast ABX for two checkpoints on the same test data, standardized
// scores, and their difference, sorted descending. Checkpoint model kinds
// are read from the files.
void RunTable3Stage(const ExperimentConfig& config,
                    const std::filesystem::path& checkpoint_first,
                    const std::filesystem::path& checkpoint_second,
                    const std::vector<std::pair<std::string, std::string>>&
                        contrasts,
                    const std::filesystem::path& out_csv);

// Shared by abx and table3: score one contrast with one checkpoint.
struct ContrastScore {
  std::vector<AbxCell> cells;
  double aggregate = 0.5;
  int64_t n_triplets = 0;
  bool untestable = false;
  std::string metric;
  std::string representation;  // "frames" | "embedding"
};

ContrastScore ScoreContrast(const ExperimentConfig& config,
                            const std::string& model_kind,
                            const std::filesystem::path& checkpoint,
                            const std::string& phone_a,
                            const std::string& phone_b);

}  // namespace phonelearn

#endif  // PHONELEARN_CLI_PIPELINE_H_
