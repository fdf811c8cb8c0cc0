// corpus/alignment.h

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

#ifndef PHONELEARN_CORPUS_ALIGNMENT_H_
#define PHONELEARN_CORPUS_ALIGNMENT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "corpus/types.h"

namespace phonelearn {

// Alignment files are CSV with header utterance,speaker,label,start,end and
// times in seconds. Rows are validated (start < end, no overlap within an
// utterance) and returned sorted by (utterance, start). Phone tables get
// prev/next from within-utterance ordering, kBoundaryMarker at the edges.
std::vector<PhoneSegment> LoadPhoneAlignments(
    const std::filesystem::path& path);
std::vector<WordToken> LoadWordAlignments(const std::filesystem::path& path);

void WritePhoneAlignments(const std::filesystem::path& path,
                          const std::vector<PhoneSegment>& segments);
void WriteWordAlignments(const std::filesystem::path& path,
                         const std::vector<WordToken>& tokens);

// Keeps segments whose phone is one of the contrast pair and whose duration
// is at least min_duration seconds. An empty result is not an error.
std::vector<PhoneSegment> ExtractPhoneSegments(
    const std::vector<PhoneSegment>& table, const std::string& phone_a,
    const std::string& phone_b, double min_duration);

}  // namespace phonelearn

#endif  // PHONELEARN_CORPUS_ALIGNMENT_H_
