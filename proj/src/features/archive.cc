// features/archive.cc

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

#include "features/archive.h"

#include <fstream>
#include <sstream>

#include "util/csv.h"
#include "util/error.h"
#include "util/io.h"

namespace phonelearn {

namespace {
constexpr char kMagic[4] = {'P', 'L', 'F', 'A'};
constexpr uint32_t kVersion = 1;
}  // namespace

void WriteFeatureArchive(const std::filesystem::path& path,
                         const std::vector<FeatureSequence>& sequences) {
  if (sequences.empty())
    throw DataError("WriteFeatureArchive: nothing to write");
  const Eigen::Index dim = sequences.front().Dim();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write archive: " + path.string());
  out.write(kMagic, 4);
  WriteU32(out, kVersion);
  WriteU32(out, static_cast<uint32_t>(dim));
  WriteF64(out, sequences.front().frame_shift);
  WriteF64(out, sequences.front().frame_length);
  WriteU32(out, static_cast<uint32_t>(sequences.size()));
  std::vector<float> row(dim);
  for (const auto& seq : sequences) {
    if (seq.Dim() != dim)
      throw DataError("WriteFeatureArchive: mixed dimensions (" +
                      std::to_string(seq.Dim()) + " vs " +
                      std::to_string(dim) + ")");
    WriteString(out, seq.utterance);
    WriteU32(out, static_cast<uint32_t>(seq.NumFrames()));
    for (Eigen::Index t = 0; t < seq.NumFrames(); ++t) {
      for (Eigen::Index d = 0; d < dim; ++d) row[d] = seq.frames(t, d);
      WriteF32Array(out, row.data(), row.size());
    }
  }
  if (!out) throw DataError("short archive write: " + path.string());
}

std::vector<FeatureSequence> ReadFeatureArchive(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open archive: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4))
    throw DataError("not a feature archive: " + path.string());
  const uint32_t version = ReadU32(in);
  if (version != kVersion)
    throw DataError("unsupported archive version in " + path.string());
  const uint32_t dim = ReadU32(in);
  const double shift = ReadF64(in);
  const double length = ReadF64(in);
  const uint32_t count = ReadU32(in);
  std::vector<FeatureSequence> sequences(count);
  std::vector<float> row(dim);
  for (uint32_t i = 0; i < count; ++i) {
    auto& seq = sequences[i];
    seq.utterance = ReadString(in);
    seq.frame_shift = shift;
    seq.frame_length = length;
    const uint32_t t_count = ReadU32(in);
    seq.frames.resize(t_count, dim);
    for (uint32_t t = 0; t < t_count; ++t) {
      ReadF32Array(in, row.data(), dim);
      for (uint32_t d = 0; d < dim; ++d) seq.frames(t, d) = row[d];
    }
  }
  return sequences;
}

void ExportFeatureCsv(const std::filesystem::path& path,
                      const std::vector<FeatureSequence>& sequences) {
  CsvTable csv;
  csv.header = {"utterance", "frame"};
  const Eigen::Index dim = sequences.empty() ? 0 : sequences.front().Dim();
  for (Eigen::Index d = 0; d < dim; ++d)
    csv.header.push_back("c" + std::to_string(d));
  for (const auto& seq : sequences) {
    for (Eigen::Index t = 0; t < seq.NumFrames(); ++t) {
      std::vector<std::string> row = {seq.utterance, std::to_string(t)};
      for (Eigen::Index d = 0; d < dim; ++d) {
        std::ostringstream ss;
        ss << seq.frames(t, d);
        row.push_back(ss.str());
      }
      csv.rows.push_back(std::move(row));
    }
  }
  WriteCsv(path, csv);
}

}  // namespace phonelearn
