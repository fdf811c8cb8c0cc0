// features/archive.h

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

#ifndef PHONELEARN_FEATURES_ARCHIVE_H_
#define PHONELEARN_FEATURES_ARCHIVE_H_

#include <filesystem>
#include <vector>

#include "features/feature_seq.h"

namespace phonelearn {

// Flat binary feature archive:
//   magic "PLFA", u32 version, u32 D, f64 frame_shift, f64 frame_length,
//   u32 record count, then per record: string id, u32 T, T*D row-major f32.
// All sequences in one archive share D and frame timing.
void WriteFeatureArchive(const std::filesystem::path& path,
                         const std::vector<FeatureSequence>& sequences);
std::vector<FeatureSequence> ReadFeatureArchive(
    const std::filesystem::path& path);

// Debug export: CSV with columns utterance,frame,c0..c{D-1}.
void ExportFeatureCsv(const std::filesystem::path& path,
                      const std::vector<FeatureSequence>& sequences);

}  // namespace phonelearn

#endif  // PHONELEARN_FEATURES_ARCHIVE_H_
