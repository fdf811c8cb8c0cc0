// stats/feature_table.h

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

#ifndef PHONELEARN_STATS_FEATURE_TABLE_H_
#define PHONELEARN_STATS_FEATURE_TABLE_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stats/zscore.h"

namespace phonelearn {

// Phonological feature table: phone -> feature name -> value. Every phone
// must carry the same feature set. Ships as editable CSV with header
// phone,<feature>,<feature>,... so the linguistic content stays user-owned.
struct FeatureTable {
  std::vector<std::string> feature_names;
  std::map<std::string, std::map<std::string, std::string>> phones;
};

FeatureTable LoadFeatureTable(const std::filesystem::path& path);
FeatureTable FeatureTableFromCsvText(const std::string& text,
                                     const std::string& origin);

// All unordered phone pairs that differ in exactly one feature value.
std::vector<Contrast> MinimalPairContrasts(const FeatureTable& table);

// The single feature on which the pair differs; error if not a minimal pair.
std::string DifferingFeature(const FeatureTable& table, const Contrast& c);

struct FeatureTypeSummary {
  double mean_z_first = 0.0;
  double mean_z_second = 0.0;
  double difference = 0.0;  // mean_z_first - mean_z_second
  int n_contrasts = 0;
};

// Groups the tables' contrasts by their single differing feature and
// reports mean z per model plus the cross-model difference.
std::map<std::string, FeatureTypeSummary> SummarizeByFeatureType(
    const ZScoreTable& first, const ZScoreTable& second,
    const FeatureTable& table);

}  // namespace phonelearn

#endif  // PHONELEARN_STATS_FEATURE_TABLE_H_
