// stats/zscore.cc

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

#include "stats/zscore.h"

#include <algorithm>
#include <cmath>

#include "util/error.h"

namespace phonelearn {

Contrast MakeContrast(const std::string& a, const std::string& b) {
  if (a == b) throw UsageError("contrast phones must differ: '" + a + "'");
  return a < b ? Contrast{a, b} : Contrast{b, a};
}

std::string ContrastName(const Contrast& c) {
  return c.first + "-" + c.second;
}

ZScoreTable ComputeZScoreTable(const std::map<Contrast, double>& errors,
                               const std::string& model) {
  if (errors.size() < 2)
    throw DataError("ComputeZScoreTable: need at least 2 contrasts");
  double mean = 0.0;
  for (const auto& [_, e] : errors) mean += e;
  mean /= static_cast<double>(errors.size());
  double var = 0.0;
  for (const auto& [_, e] : errors) var += (e - mean) * (e - mean);
  var /= static_cast<double>(errors.size());  // population variance
  if (var == 0.0)
    throw DataError("ComputeZScoreTable: zero variance across contrasts");
  const double sd = std::sqrt(var);

  ZScoreTable table;
  table.model = model;
  for (const auto& [contrast, e] : errors)
    table.rows[contrast] = ZScoreRow{e, (e - mean) / sd};
  return table;
}

std::vector<std::pair<Contrast, double>> ModelDifference(
    const ZScoreTable& first, const ZScoreTable& second) {
  if (first.rows.size() != second.rows.size())
    throw DataError("ModelDifference: contrast sets differ in size");
  std::vector<std::pair<Contrast, double>> out;
  out.reserve(first.rows.size());
  for (const auto& [contrast, row] : first.rows) {
    auto it = second.rows.find(contrast);
    if (it == second.rows.end())
      throw DataError("ModelDifference: contrast " + ContrastName(contrast) +
                      " missing from model '" + second.model + "'");
    out.emplace_back(contrast, row.z - it->second.z);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

}  // namespace phonelearn
