// abx/report.cc

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

#include "abx/report.h"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "util/csv.h"
#include "util/error.h"
#include "util/io.h"

namespace phonelearn {

using nlohmann::json;

namespace {

std::string FormatRate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void WriteAbxReportJson(const std::filesystem::path& path,
                        const AbxReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"subset", c.subset},
                     {"speaker", c.speaker},
                     {"prev", c.prev},
                     {"next", c.next},
                     {"n_triplets", c.n_triplets},
                     {"error", c.error}});
  }
  json j{{"model", r.model},
         {"metric", r.metric},
         {"representation", r.representation},
         {"contrast", {r.phone_a, r.phone_b}},
         {"cells", cells},
         {"aggregate_error", r.aggregate_error},
         {"n_triplets", r.n_triplets},
         {"chance_level", 0.5},
         {"untestable", r.untestable},
         {"seed", r.seed},
         {"config_hash", r.config_hash}};
  SpewFile(path, j.dump(2) + "\n");
}

AbxReport ReadAbxReportJson(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(SlurpFile(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  AbxReport r;
  try {
    r.model = j.at("model").get<std::string>();
    r.metric = j.at("metric").get<std::string>();
    r.representation = j.at("representation").get<std::string>();
    r.phone_a = j.at("contrast")[0].get<std::string>();
    r.phone_b = j.at("contrast")[1].get<std::string>();
    for (const auto& jc : j.at("cells")) {
      AbxCell c;
      c.phone_a = r.phone_a;
      c.phone_b = r.phone_b;
      c.subset = jc.at("subset").get<std::string>();
      c.speaker = jc.at("speaker").get<std::string>();
      c.prev = jc.at("prev").get<std::string>();
      c.next = jc.at("next").get<std::string>();
      c.n_triplets = jc.at("n_triplets").get<int>();
      c.error = jc.at("error").get<double>();
      r.cells.push_back(std::move(c));
    }
    r.aggregate_error = j.at("aggregate_error").get<double>();
    r.n_triplets = j.at("n_triplets").get<int64_t>();
    r.untestable = j.at("untestable").get<bool>();
    r.seed = j.at("seed").get<uint64_t>();
    r.config_hash = j.at("config_hash").get<std::string>();
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return r;
}

void WriteCellsCsv(const std::filesystem::path& path,
                   const std::vector<AbxCell>& cells) {
  CsvTable csv;
  csv.header = {"subset", "speaker",    "prev",
                "next",   "phone_a",    "phone_b",
                "n_triplets", "error"};
  for (const auto& c : cells)
    csv.rows.push_back({c.subset, c.speaker, c.prev, c.next, c.phone_a,
                        c.phone_b, std::to_string(c.n_triplets),
                        FormatRate(c.error)});
  WriteCsv(path, csv);
}

}  // namespace phonelearn
