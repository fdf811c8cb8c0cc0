// corpus/synth.h

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

#ifndef PHONELEARN_CORPUS_SYNTH_H_
#define PHONELEARN_CORPUS_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "corpus/types.h"

namespace phonelearn {

// Each phone is a stack of 2-3 sinusoids at formant-like target frequencies.
struct PhoneProto {
  std::vector<double> formants;    // Hz, 2 or 3 entries
  std::vector<double> amplitudes;  // same length as formants
  double duration_lo = 0.06;       // seconds, uniform draw
  double duration_hi = 0.14;
};

// Desk-scale speech stand-in: utterances are word sequences; each word is a
// phone string; phones are additive sinusoids with linear formant
// interpolation between adjacent phone targets. Speakers differ by a global
// frequency scaling plus gain. Ground-truth phone and word alignments are
// exact by construction.
struct SynthConfig {
  std::string language = "A";
  std::string subset = "train";
  int sample_rate = 16000;
  std::map<std::string, PhoneProto> phones;
  std::map<std::string, std::vector<std::string>> lexicon;
  double min_phone_duration = 0.04;  // floor applied to every drawn duration
  int n_speakers = 8;
  double freq_scale_lo = 0.9;
  double freq_scale_hi = 1.1;
  int n_utterances = 40;
  int words_per_utterance_lo = 3;
  int words_per_utterance_hi = 7;
  double gap_lo = 0.03;  // inter-word silence, seconds
  double gap_hi = 0.07;
  double formant_jitter = 0.025;  // relative sd per token and formant
  double amplitude = 0.22;        // peak level as a fraction of full scale
  double noise_level = 0.0015;    // uniform noise floor, same units
};

// A config for the "non-native" language: every occurrence of the given
// phones collapses to a single label whose prototype averages theirs. The
// lexicon is rewritten accordingly (words that become homophones collapse).
SynthConfig MergePhones(const SynthConfig& base,
                        const std::vector<std::string>& merged,
                        const std::string& into);

struct SynthOutput {
  Manifest manifest;
  std::vector<PhoneSegment> phone_table;
  std::vector<WordToken> word_table;
};

// Writes 16 kHz 16-bit mono WAVs plus alignment CSVs and a manifest under
// out_dir. Bit-identical outputs for identical (config, seed).
SynthOutput SynthGenerate(const SynthConfig& config,
                          const std::filesystem::path& out_dir, uint64_t seed);

// JSON (de)serialization for the `synth` subcommand; schema documented in
// the README.
SynthConfig SynthConfigFromJsonFile(const std::filesystem::path& path);

}  // namespace phonelearn

#endif  // PHONELEARN_CORPUS_SYNTH_H_
