// abx/report.h

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

#ifndef PHONELEARN_ABX_REPORT_H_
#define PHONELEARN_ABX_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "abx/types.h"

namespace phonelearn {

struct AbxReport {
  std::string model;
  std::string metric;
  std::string representation;  // "frames" or "embedding"
  std::string phone_a;
  std::string phone_b;
  std::vector<AbxCell> cells;
  double aggregate_error = 0.5;
  int64_t n_triplets = 0;
  bool untestable = false;
  // Provenance
  uint64_t seed = 0;
  std::string config_hash;
};

void WriteAbxReportJson(const std::filesystem::path& path,
                        const AbxReport& report);
AbxReport ReadAbxReportJson(const std::filesystem::path& path);

// Per-cell CSV: subset,speaker,prev,next,phone_a,phone_b,n_triplets,error.
void WriteCellsCsv(const std::filesystem::path& path,
                   const std::vector<AbxCell>& cells);

}  // namespace phonelearn

#endif  // PHONELEARN_ABX_REPORT_H_
