// corpus/alignment.cc

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

#include "corpus/alignment.h"

#include <algorithm>
#include <cstdlib>

#include "util/csv.h"
#include "util/error.h"

namespace phonelearn {

namespace {

const std::vector<std::string> kAlignmentHeader = {"utterance", "speaker",
                                                   "label", "start", "end"};

struct RawRow {
  std::string utterance;
  std::string speaker;
  std::string label;
  double start;
  double end;
  int line;
};

double ParseTime(const std::string& s, const std::string& origin, int line) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw DataError(origin + ":" + std::to_string(line) +
                    ": malformed time value '" + s + "'");
  return v;
}

std::vector<RawRow> LoadRaw(const std::filesystem::path& path) {
  CsvTable csv = ReadCsv(path);
  if (csv.header != kAlignmentHeader)
    throw DataError(path.string() +
                    ": expected header utterance,speaker,label,start,end");
  std::vector<RawRow> rows;
  rows.reserve(csv.rows.size());
  const std::string origin = path.string();
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    int line = csv.line_numbers[i];
    RawRow row{r[0], r[1], r[2], ParseTime(r[3], origin, line),
               ParseTime(r[4], origin, line), line};
    if (row.utterance.empty() || row.label.empty())
      throw DataError(origin + ":" + std::to_string(line) +
                      ": empty utterance or label");
    if (row.start < 0.0 || row.end <= row.start)
      throw DataError(origin + ":" + std::to_string(line) +
                      ": invalid span [" + r[3] + ", " + r[4] + ")");
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RawRow& a, const RawRow& b) {
                     if (a.utterance != b.utterance)
                       return a.utterance < b.utterance;
                     return a.start < b.start;
                   });
  // Segments within an utterance must not overlap (1 us slack for rounding).
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].utterance == rows[i - 1].utterance &&
        rows[i].start < rows[i - 1].end - 1e-6)
      throw DataError(origin + ":" + std::to_string(rows[i].line) +
                      ": segment overlaps previous one in utterance '" +
                      rows[i].utterance + "'");
  }
  return rows;
}

}  // namespace

std::vector<PhoneSegment> LoadPhoneAlignments(
    const std::filesystem::path& path) {
  auto rows = LoadRaw(path);
  std::vector<PhoneSegment> segments(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    auto& s = segments[i];
    s.utterance = rows[i].utterance;
    s.speaker = rows[i].speaker;
    s.phone = rows[i].label;
    s.start = rows[i].start;
    s.end = rows[i].end;
    bool first = i == 0 || rows[i - 1].utterance != rows[i].utterance;
    bool last =
        i + 1 == rows.size() || rows[i + 1].utterance != rows[i].utterance;
    s.prev = first ? kBoundaryMarker : rows[i - 1].label;
    s.next = last ? kBoundaryMarker : rows[i + 1].label;
  }
  return segments;
}

std::vector<WordToken> LoadWordAlignments(const std::filesystem::path& path) {
  auto rows = LoadRaw(path);
  std::vector<WordToken> tokens(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    tokens[i] = {rows[i].utterance, rows[i].speaker, rows[i].label,
                 rows[i].start, rows[i].end};
  }
  return tokens;
}

void WritePhoneAlignments(const std::filesystem::path& path,
                          const std::vector<PhoneSegment>& segments) {
  CsvTable csv;
  csv.header = kAlignmentHeader;
  for (const auto& s : segments)
    csv.rows.push_back({s.utterance, s.speaker, s.phone,
                        FormatSeconds(s.start), FormatSeconds(s.end)});
  WriteCsv(path, csv);
}

void WriteWordAlignments(const std::filesystem::path& path,
                         const std::vector<WordToken>& tokens) {
  CsvTable csv;
  csv.header = kAlignmentHeader;
  for (const auto& t : tokens)
    csv.rows.push_back({t.utterance, t.speaker, t.word, FormatSeconds(t.start),
                        FormatSeconds(t.end)});
  WriteCsv(path, csv);
}

std::vector<PhoneSegment> ExtractPhoneSegments(
    const std::vector<PhoneSegment>& table, const std::string& phone_a,
    const std::string& phone_b, double min_duration) {
  if (min_duration < 0.0)
    throw UsageError("min_duration must be non-negative");
  std::vector<PhoneSegment> out;
  for (const auto& s : table) {
    if (s.phone != phone_a && s.phone != phone_b) continue;
    if (s.Duration() < min_duration) continue;
    out.push_back(s);
  }
  return out;
}

}  // namespace phonelearn
