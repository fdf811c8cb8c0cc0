// corpus/types.h

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

#ifndef PHONELEARN_CORPUS_TYPES_H_
#define PHONELEARN_CORPUS_TYPES_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace phonelearn {

// Label used for prev/next at utterance edges.
inline constexpr const char* kBoundaryMarker = "#";

struct Utterance {
  std::string id;
  std::string speaker;
  std::filesystem::path audio_path;
  int sample_rate = 0;
  double duration = 0.0;  // seconds
};

// A phone span from a phone-level alignment. prev/next are the immediately
// adjacent phone labels within the utterance (kBoundaryMarker at the edges).
struct PhoneSegment {
  std::string utterance;
  std::string speaker;
  std::string phone;
  double start = 0.0;
  double end = 0.0;
  std::string prev;
  std::string next;

  double Duration() const { return end - start; }
};

struct WordToken {
  std::string utterance;
  std::string speaker;
  std::string word;
  double start = 0.0;
  double end = 0.0;

  double Duration() const { return end - start; }
};

// Two spoken instances of the same word type. frame_alignment is filled by a
// DTW pass once features exist; indices are monotone in both coordinates.
struct TokenPair {
  WordToken a;
  WordToken b;
  std::vector<std::pair<int, int>> frame_alignment;
};

// A random word-sized span used for sequence autoencoder training.
struct Chunk {
  std::string utterance;
  double start = 0.0;
  double end = 0.0;
};

struct Manifest {
  std::string language;
  std::string subset;
  std::filesystem::path audio_dir;
  std::filesystem::path phone_alignment;
  std::filesystem::path word_alignment;
  std::vector<Utterance> utterances;

  const Utterance* Find(const std::string& id) const;
};

}  // namespace phonelearn

#endif  // PHONELEARN_CORPUS_TYPES_H_
