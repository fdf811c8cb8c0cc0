// stats/zscore.h

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

#ifndef PHONELEARN_STATS_ZSCORE_H_
#define PHONELEARN_STATS_ZSCORE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace phonelearn {

// Contrasts are unordered phone pairs; stored lexicographically ordered.
using Contrast = std::pair<std::string, std::string>;

Contrast MakeContrast(const std::string& a, const std::string& b);
std::string ContrastName(const Contrast& c);

struct ZScoreRow {
  double error = 0.0;
  double z = 0.0;
};

// Per-contrast errors standardized against the model's own mean and
// population standard deviation, so scores are comparable across models
// whose absolute error levels differ.
struct ZScoreTable {
  std::string model;
  std::map<Contrast, ZScoreRow> rows;
};

// Needs >= 2 contrasts; all-equal errors (zero variance) are an error.
ZScoreTable ComputeZScoreTable(const std::map<Contrast, double>& errors,
                               const std::string& model);

// z_first - z_second per contrast, sorted by descending difference.
std::vector<std::pair<Contrast, double>> ModelDifference(
    const ZScoreTable& first, const ZScoreTable& second);

}  // namespace phonelearn

#endif  // PHONELEARN_STATS_ZSCORE_H_
