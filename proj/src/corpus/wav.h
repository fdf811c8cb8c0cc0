// corpus/wav.h

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

#ifndef PHONELEARN_CORPUS_WAV_H_
#define PHONELEARN_CORPUS_WAV_H_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace phonelearn {

struct WavData {
  int sample_rate = 0;
  std::vector<int16_t> samples;  // mono PCM

  double Duration() const {
    return sample_rate > 0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

// 16-bit PCM mono only; anything else is a DataError.
WavData ReadWav(const std::filesystem::path& path);
void WriteWav(const std::filesystem::path& path, const WavData& wav);

}  // namespace phonelearn

#endif  // PHONELEARN_CORPUS_WAV_H_
