// nnet/train_log.cc

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

#include <sstream>

#include "nnet/dense_net.h"
#include "util/csv.h"

namespace phonelearn {

void WriteNnetTrainLogCsv(const std::filesystem::path& path,
                          const std::vector<TrainLogEntry>& log) {
  CsvTable csv;
  csv.header = {"epoch", "loss", "seconds"};
  for (const auto& e : log) {
    std::ostringstream loss, secs;
    loss << e.loss;
    secs << e.seconds;
    csv.rows.push_back({std::to_string(e.epoch), loss.str(), secs.str()});
  }
  WriteCsv(path, csv);
}

}  // namespace phonelearn
