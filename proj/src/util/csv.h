// util/csv.h

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

#ifndef PHONELEARN_UTIL_CSV_H_
#define PHONELEARN_UTIL_CSV_H_

#include <filesystem>
#include <string>
#include <vector>

namespace phonelearn {

// Plain UTF-8 comma-separated values, no quoting (fields must not contain
// commas or newlines). First row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based line number per row for error messages.
  std::vector<int> line_numbers;
};

CsvTable ReadCsv(const std::filesystem::path& path);
CsvTable ParseCsv(const std::string& text, const std::string& origin);
void WriteCsv(const std::filesystem::path& path, const CsvTable& table);
std::string FormatCsv(const CsvTable& table);

// Fixed-precision second timestamps for alignment files (1 ms resolution is
// guaranteed; we write 6 decimals).
std::string FormatSeconds(double seconds);

}  // namespace phonelearn

#endif  // PHONELEARN_UTIL_CSV_H_
