// corpus/manifest.h

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

#ifndef PHONELEARN_CORPUS_MANIFEST_H_
#define PHONELEARN_CORPUS_MANIFEST_H_

#include <filesystem>

#include "corpus/types.h"

namespace phonelearn {

// Manifest JSON schema:
// {
//   "language": "A", "subset": "train",
//   "audio_dir": "audio",                // relative paths resolve against
//   "alignments": {"phone": "phones.csv", "word": "words.csv"},
//   "utterances": [
//     {"id": "u0", "speaker": "s0", "audio": "u0.wav",
//      "sample_rate": 16000, "duration": 3.20}
//   ]
// }
// Relative paths are resolved against the manifest's directory.
Manifest LoadManifest(const std::filesystem::path& path);
void SaveManifest(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace phonelearn

#endif  // PHONELEARN_CORPUS_MANIFEST_H_
