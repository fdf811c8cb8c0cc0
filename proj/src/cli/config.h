// cli/config.h

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

#ifndef PHONELEARN_CLI_CONFIG_H_
#define PHONELEARN_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace phonelearn {

struct DpgmmParamsCfg {
  int k0 = 10;
  int iterations = 1501;
  double alpha = 1.0;
};

struct AeParamsCfg {
  int epochs = 5;  // per pretraining layer, and again for fine-tuning
  int batch_size = 256;
  double adadelta_decay = 0.95;
};

struct CaeParamsCfg {
  int epochs = 120;
  int max_pairs_per_type = 200;
};

struct RnnParamsCfg {
  int hidden = 400;
  int layers = 3;
  int embed_dim = 130;
  int ae_epochs = 15;
  int cae_epochs = 3;
  double learning_rate = 0.001;
  int batch_size = 32;
  int n_chunks = 2000;
  int max_pairs_per_type = 50;
};

// One experiment: a model, two training languages (native / non-native),
// one test language split into subset manifests, one contrast. Defaults
// mirror the reference training recipes.
struct ExperimentConfig {
  std::string simulation = "experiment";
  std::string model = "dpgmm";
  std::filesystem::path native_train_manifest;
  std::filesystem::path nonnative_train_manifest;
  std::vector<std::filesystem::path> test_manifests;
  std::string contrast_a;
  std::string contrast_b;
  double min_phone_duration = 0.0;
  int abx_max_per_cell = 500;
  int n_permutations = 10000;
  double significance_alpha = 0.05;
  bool mean_normalize = false;  // per-speaker feature mean subtraction
  std::string context_prev;     // optional restricted-context filter
  std::string context_next;
  uint64_t seed = 0;
  bool seed_set = false;
  std::filesystem::path output_dir;
  int workers = 0;

  DpgmmParamsCfg dpgmm;
  AeParamsCfg ae;
  CaeParamsCfg cae;
  RnnParamsCfg rnn;

  // Canonical serialized form (after overrides); hashed into reports.
  std::string canonical_json;

  std::string ConfigHashHex() const;
  void Validate() const;
};

// Loads JSON config and applies `--set key.path=value` overrides before
// parsing. Values parse as JSON scalars when possible, strings otherwise.
ExperimentConfig LoadExperimentConfig(
    const std::filesystem::path& path,
    const std::vector<std::string>& overrides = {});

ExperimentConfig ExperimentConfigFromJsonText(
    const std::string& text, const std::string& origin,
    const std::filesystem::path& base_dir,
    const std::vector<std::string>& overrides = {});

// Known model names, in display order.
const std::vector<std::string>& KnownModels();

}  // namespace phonelearn

#endif  // PHONELEARN_CLI_CONFIG_H_
