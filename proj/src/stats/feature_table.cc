// stats/feature_table.cc

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

#include "stats/feature_table.h"

#include "util/csv.h"
#include "util/error.h"
#include "util/io.h"

namespace phonelearn {

FeatureTable FeatureTableFromCsvText(const std::string& text,
                                     const std::string& origin) {
  CsvTable csv = ParseCsv(text, origin);
  if (csv.header.size() < 2 || csv.header[0] != "phone")
    throw DataError(origin + ": expected header phone,<feature>,...");
  FeatureTable table;
  table.feature_names.assign(csv.header.begin() + 1, csv.header.end());
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    if (table.phones.count(row[0]))
      throw DataError(origin + ":" + std::to_string(csv.line_numbers[r]) +
                      ": duplicate phone '" + row[0] + "'");
    auto& features = table.phones[row[0]];
    for (size_t f = 0; f < table.feature_names.size(); ++f)
      features[table.feature_names[f]] = row[f + 1];
  }
  if (table.phones.empty()) throw DataError(origin + ": no phones");
  return table;
}

FeatureTable LoadFeatureTable(const std::filesystem::path& path) {
  return FeatureTableFromCsvText(SlurpFile(path), path.string());
}

namespace {

int CountDiffering(const FeatureTable& table,
                   const std::map<std::string, std::string>& a,
                   const std::map<std::string, std::string>& b,
                   std::string* which) {
  int differing = 0;
  for (const auto& name : table.feature_names) {
    if (a.at(name) != b.at(name)) {
      ++differing;
      if (which) *which = name;
    }
  }
  return differing;
}

}  // namespace

std::vector<Contrast> MinimalPairContrasts(const FeatureTable& table) {
  std::vector<Contrast> out;
  for (auto it1 = table.phones.begin(); it1 != table.phones.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != table.phones.end(); ++it2) {
      if (CountDiffering(table, it1->second, it2->second, nullptr) == 1)
        out.push_back(MakeContrast(it1->first, it2->first));
    }
  }
  return out;
}

std::string DifferingFeature(const FeatureTable& table, const Contrast& c) {
  auto a = table.phones.find(c.first);
  auto b = table.phones.find(c.second);
  if (a == table.phones.end() || b == table.phones.end())
    throw DataError("feature table misses a phone of contrast " +
                    ContrastName(c));
  std::string which;
  int differing = CountDiffering(table, a->second, b->second, &which);
  if (differing != 1)
    throw DataError("contrast " + ContrastName(c) + " differs in " +
                    std::to_string(differing) +
                    " features; not a minimal pair");
  return which;
}

std::map<std::string, FeatureTypeSummary> SummarizeByFeatureType(
    const ZScoreTable& first, const ZScoreTable& second,
    const FeatureTable& table) {
  std::map<std::string, FeatureTypeSummary> out;
  for (const auto& [contrast, row] : first.rows) {
    auto it = second.rows.find(contrast);
    if (it == second.rows.end())
      throw DataError("SummarizeByFeatureType: contrast " +
                      ContrastName(contrast) + " missing from model '" +
                      second.model + "'");
    const std::string feature = DifferingFeature(table, contrast);
    auto& s = out[feature];
    s.mean_z_first += row.z;
    s.mean_z_second += it->second.z;
    s.n_contrasts += 1;
  }
  for (auto& [_, s] : out) {
    s.mean_z_first /= s.n_contrasts;
    s.mean_z_second /= s.n_contrasts;
    s.difference = s.mean_z_first - s.mean_z_second;
  }
  return out;
}

}  // namespace phonelearn
