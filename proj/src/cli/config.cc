// cli/config.cc

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

#include "cli/config.h"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "util/error.h"
#include "util/io.h"
#include "util/rng.h"

namespace phonelearn {

using nlohmann::json;

const std::vector<std::string>& KnownModels() {
  static const std::vector<std::string> kModels = {"dpgmm", "ae", "cae",
                                                   "ae-rnn", "cae-rnn"};
  return kModels;
}

std::string ExperimentConfig::ConfigHashHex() const {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(canonical_json)));
  return buf;
}

void ExperimentConfig::Validate() const {
  if (!seed_set)
    throw UsageError("config: a seed is required (no unseeded runs)");
  if (std::find(KnownModels().begin(), KnownModels().end(), model) ==
      KnownModels().end())
    throw UsageError("config: unknown model '" + model +
                     "' (expected dpgmm, ae, cae, ae-rnn or cae-rnn)");
  if (contrast_a.empty() || contrast_b.empty() || contrast_a == contrast_b)
    throw UsageError("config: contrast must name two distinct phones");
  if (output_dir.empty()) throw UsageError("config: output_dir is required");
  if (min_phone_duration < 0)
    throw UsageError("config: min_phone_duration must be >= 0");
  if (abx_max_per_cell < 1)
    throw UsageError("config: abx_max_per_cell must be >= 1");
}

namespace {

json ParseOverrideValue(const std::string& text) {
  json v = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (v.is_discarded()) return json(text);
  return v;
}

void ApplyOverrides(json* j, const std::vector<std::string>& overrides) {
  for (const auto& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw UsageError("--set expects key.path=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    std::string pointer = "/";
    for (char c : key) pointer += (c == '.') ? '/' : c;
    try {
      (*j)[json::json_pointer(pointer)] = ParseOverrideValue(kv.substr(eq + 1));
    } catch (const json::exception& e) {
      throw UsageError("--set '" + kv + "': " + e.what());
    }
  }
}

}  // namespace

ExperimentConfig ExperimentConfigFromJsonText(
    const std::string& text, const std::string& origin,
    const std::filesystem::path& base_dir,
    const std::vector<std::string>& overrides) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(origin + ": " + e.what());
  }
  ApplyOverrides(&j, overrides);

  ExperimentConfig cfg;
  auto resolve = [&base_dir](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  try {
    cfg.simulation = j.value("simulation", cfg.simulation);
    cfg.model = j.value("model", cfg.model);
    if (j.contains("native_train_manifest"))
      cfg.native_train_manifest =
          resolve(j["native_train_manifest"].get<std::string>());
    if (j.contains("nonnative_train_manifest"))
      cfg.nonnative_train_manifest =
          resolve(j["nonnative_train_manifest"].get<std::string>());
    if (j.contains("test_manifests"))
      for (const auto& m : j["test_manifests"])
        cfg.test_manifests.push_back(resolve(m.get<std::string>()));
    if (j.contains("contrast")) {
      cfg.contrast_a = j["contrast"][0].get<std::string>();
      cfg.contrast_b = j["contrast"][1].get<std::string>();
    }
    cfg.min_phone_duration =
        j.value("min_phone_duration", cfg.min_phone_duration);
    cfg.abx_max_per_cell = j.value("abx_max_per_cell", cfg.abx_max_per_cell);
    cfg.n_permutations = j.value("n_permutations", cfg.n_permutations);
    cfg.significance_alpha =
        j.value("significance_alpha", cfg.significance_alpha);
    cfg.mean_normalize = j.value("mean_normalize", cfg.mean_normalize);
    if (j.contains("context")) {
      cfg.context_prev = j["context"][0].get<std::string>();
      cfg.context_next = j["context"][1].get<std::string>();
    }
    if (j.contains("seed")) {
      cfg.seed = j["seed"].get<uint64_t>();
      cfg.seed_set = true;
    }
    if (j.contains("output_dir"))
      cfg.output_dir = resolve(j["output_dir"].get<std::string>());
    cfg.workers = j.value("workers", cfg.workers);

    if (j.contains("dpgmm")) {
      const auto& m = j["dpgmm"];
      cfg.dpgmm.k0 = m.value("k0", cfg.dpgmm.k0);
      cfg.dpgmm.iterations = m.value("iterations", cfg.dpgmm.iterations);
      cfg.dpgmm.alpha = m.value("alpha", cfg.dpgmm.alpha);
    }
    if (j.contains("ae")) {
      const auto& m = j["ae"];
      cfg.ae.epochs = m.value("epochs", cfg.ae.epochs);
      cfg.ae.batch_size = m.value("batch_size", cfg.ae.batch_size);
      cfg.ae.adadelta_decay = m.value("adadelta_decay", cfg.ae.adadelta_decay);
    }
    if (j.contains("cae")) {
      const auto& m = j["cae"];
      cfg.cae.epochs = m.value("epochs", cfg.cae.epochs);
      cfg.cae.max_pairs_per_type =
          m.value("max_pairs_per_type", cfg.cae.max_pairs_per_type);
    }
    if (j.contains("rnn")) {
      const auto& m = j["rnn"];
      cfg.rnn.hidden = m.value("hidden", cfg.rnn.hidden);
      cfg.rnn.layers = m.value("layers", cfg.rnn.layers);
      cfg.rnn.embed_dim = m.value("embed_dim", cfg.rnn.embed_dim);
      cfg.rnn.ae_epochs = m.value("ae_epochs", cfg.rnn.ae_epochs);
      cfg.rnn.cae_epochs = m.value("cae_epochs", cfg.rnn.cae_epochs);
      cfg.rnn.learning_rate = m.value("learning_rate", cfg.rnn.learning_rate);
      cfg.rnn.batch_size = m.value("batch_size", cfg.rnn.batch_size);
      cfg.rnn.n_chunks = m.value("n_chunks", cfg.rnn.n_chunks);
      cfg.rnn.max_pairs_per_type =
          m.value("max_pairs_per_type", cfg.rnn.max_pairs_per_type);
    }
  } catch (const json::exception& e) {
    throw DataError(origin + ": " + e.what());
  }
  cfg.canonical_json = j.dump();
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(
    const std::filesystem::path& path,
    const std::vector<std::string>& overrides) {
  return ExperimentConfigFromJsonText(SlurpFile(path), path.string(),
                                      path.parent_path(), overrides);
}

}  // namespace phonelearn
