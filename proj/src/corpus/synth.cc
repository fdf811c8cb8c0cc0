// corpus/synth.cc

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

#include "corpus/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <nlohmann/json.hpp>

#include "corpus/alignment.h"
#include "corpus/manifest.h"
#include "corpus/wav.h"
#include "util/error.h"
#include "util/io.h"
#include "util/rng.h"

namespace phonelearn {

namespace {

constexpr int kMaxFormants = 3;
constexpr const char* kSilenceLabel = "sil";

struct TokenTrack {
  // Per-token realization: jittered formants (padded to kMaxFormants;
  // amplitude 0 marks unused slots).
  double freq[kMaxFormants];
  double amp[kMaxFormants];
  double duration;
};

void ValidateConfig(const SynthConfig& cfg) {
  if (cfg.phones.empty()) throw DataError("synth: empty phone inventory");
  if (cfg.lexicon.empty()) throw DataError("synth: empty lexicon");
  if (cfg.sample_rate <= 0) throw DataError("synth: bad sample rate");
  if (cfg.n_speakers < 1) throw DataError("synth: need at least one speaker");
  if (cfg.n_utterances < 1) throw DataError("synth: need utterances");
  for (const auto& [label, proto] : cfg.phones) {
    if (proto.formants.size() < 2 || proto.formants.size() > 3)
      throw DataError("synth: phone '" + label + "' needs 2 or 3 formants");
    if (proto.amplitudes.size() != proto.formants.size())
      throw DataError("synth: phone '" + label +
                      "' formant/amplitude length mismatch");
    if (proto.duration_hi < proto.duration_lo || proto.duration_lo <= 0)
      throw DataError("synth: phone '" + label + "' bad duration range");
  }
  for (const auto& [word, phones] : cfg.lexicon) {
    if (phones.empty())
      throw DataError("synth: word '" + word + "' has no phones");
    for (const auto& p : phones)
      if (!cfg.phones.count(p))
        throw DataError("synth: word '" + word + "' uses phone '" + p +
                        "' missing from the inventory");
  }
}

TokenTrack RealizeToken(const PhoneProto& proto, double freq_scale,
                        double jitter, double min_duration, Rng* rng) {
  TokenTrack t{};
  for (int f = 0; f < kMaxFormants; ++f) {
    if (f < static_cast<int>(proto.formants.size())) {
      t.freq[f] =
          proto.formants[f] * freq_scale * (1.0 + jitter * rng->Gaussian());
      t.amp[f] = proto.amplitudes[f];
    } else {
      t.freq[f] = 1000.0;  // inert; amplitude zero
      t.amp[f] = 0.0;
    }
  }
  t.duration =
      std::max(min_duration,
               rng->Uniform(proto.duration_lo, proto.duration_hi));
  return t;
}

}  // namespace

SynthConfig MergePhones(const SynthConfig& base,
                        const std::vector<std::string>& merged,
                        const std::string& into) {
  if (merged.size() < 2) throw UsageError("MergePhones: need >= 2 phones");
  SynthConfig out = base;
  PhoneProto proto;
  size_t n_formants = 0;
  for (const auto& label : merged) {
    auto it = base.phones.find(label);
    if (it == base.phones.end())
      throw DataError("MergePhones: unknown phone '" + label + "'");
    n_formants = std::max(n_formants, it->second.formants.size());
  }
  proto.formants.assign(n_formants, 0.0);
  proto.amplitudes.assign(n_formants, 0.0);
  proto.duration_lo = 0.0;
  proto.duration_hi = 0.0;
  for (const auto& label : merged) {
    const auto& p = base.phones.at(label);
    for (size_t f = 0; f < n_formants; ++f) {
      size_t src = std::min(f, p.formants.size() - 1);
      proto.formants[f] += p.formants[src] / merged.size();
      proto.amplitudes[f] += p.amplitudes[src] / merged.size();
    }
    proto.duration_lo += p.duration_lo / merged.size();
    proto.duration_hi += p.duration_hi / merged.size();
  }
  for (const auto& label : merged) out.phones.erase(label);
  out.phones[into] = proto;

  std::map<std::string, std::vector<std::string>> lexicon;
  for (const auto& [word, phones] : base.lexicon) {
    std::vector<std::string> mapped;
    std::string mapped_word;
    for (const auto& p : phones) {
      bool hit = std::find(merged.begin(), merged.end(), p) != merged.end();
      mapped.push_back(hit ? into : p);
      mapped_word += mapped.back();
    }
    lexicon[mapped_word] = mapped;  // homophones collapse here
  }
  out.lexicon = std::move(lexicon);
  return out;
}

SynthOutput SynthGenerate(const SynthConfig& cfg,
                          const std::filesystem::path& out_dir,
                          uint64_t seed) {
  ValidateConfig(cfg);
  namespace fs = std::filesystem;
  const fs::path audio_dir = out_dir / "audio";
  fs::create_directories(audio_dir);

  std::vector<std::string> word_list;
  for (const auto& [word, _] : cfg.lexicon) word_list.push_back(word);

  // Speakers: frequency scales evenly spread over the range; per-speaker
  // gain drawn once.
  struct Speaker {
    std::string id;
    double freq_scale;
    double gain;
  };
  std::vector<Speaker> speakers(cfg.n_speakers);
  {
    Rng rng(DeriveSeed(seed, "speakers"));
    for (int s = 0; s < cfg.n_speakers; ++s) {
      double frac = cfg.n_speakers == 1
                        ? 0.5
                        : static_cast<double>(s) / (cfg.n_speakers - 1);
      speakers[s] = {"spk" + std::to_string(s),
                     cfg.freq_scale_lo +
                         frac * (cfg.freq_scale_hi - cfg.freq_scale_lo),
                     rng.Uniform(0.8, 1.0)};
    }
  }

  SynthOutput out;
  out.manifest.language = cfg.language;
  out.manifest.subset = cfg.subset;
  out.manifest.audio_dir = audio_dir;

  const double dt = 1.0 / cfg.sample_rate;
  const double two_pi = 2.0 * std::numbers::pi;

  for (int ui = 0; ui < cfg.n_utterances; ++ui) {
    Rng rng(HashCombine(DeriveSeed(seed, "utterance"), ui));
    const Speaker& spk = speakers[ui % cfg.n_speakers];
    char id_buf[32];
    std::snprintf(id_buf, sizeof(id_buf), "%s_%s_u%04d", cfg.language.c_str(),
                  cfg.subset.c_str(), ui);
    const std::string utt_id = id_buf;

    // Lay out words and phone tokens on the timeline first.
    struct PlacedPhone {
      std::string label;
      TokenTrack track;
      double start, end;
    };
    std::vector<PlacedPhone> placed;
    std::vector<WordToken> words;
    double cursor = rng.Uniform(cfg.gap_lo, cfg.gap_hi);
    placed.push_back({kSilenceLabel, TokenTrack{}, 0.0, cursor});
    int n_words = cfg.words_per_utterance_lo +
                  static_cast<int>(rng.UniformInt(
                      cfg.words_per_utterance_hi - cfg.words_per_utterance_lo +
                      1));
    for (int w = 0; w < n_words; ++w) {
      const std::string& word = word_list[rng.UniformInt(word_list.size())];
      double word_start = cursor;
      for (const auto& phone : cfg.lexicon.at(word)) {
        TokenTrack track =
            RealizeToken(cfg.phones.at(phone), spk.freq_scale,
                         cfg.formant_jitter, cfg.min_phone_duration, &rng);
        placed.push_back({phone, track, cursor, cursor + track.duration});
        cursor += track.duration;
      }
      words.push_back(WordToken{utt_id, spk.id, word, word_start, cursor});
      double gap = rng.Uniform(cfg.gap_lo, cfg.gap_hi);
      placed.push_back({kSilenceLabel, TokenTrack{}, cursor, cursor + gap});
      cursor += gap;
    }
    const double duration = cursor;
    // Ceil keeps every aligned segment inside the utterance duration.
    const size_t n_samples =
        static_cast<size_t>(std::ceil(duration * cfg.sample_rate));

    // Formant control points sit at phone centers; frequency and amplitude
    // interpolate linearly between consecutive voiced phones of a word and
    // ramp to zero amplitude into silence.
    std::vector<double> signal(n_samples, 0.0);
    double phase[kMaxFormants] = {0.0, 0.0, 0.0};
    size_t seg = 0;
    for (size_t i = 0; i < n_samples; ++i) {
      const double t = i * dt;
      while (seg + 1 < placed.size() && t >= placed[seg].end) ++seg;
      const PlacedPhone& cur = placed[seg];
      double mid = 0.5 * (cur.start + cur.end);
      const PlacedPhone* other = nullptr;
      double frac = 0.0;  // 0 at current center, 1 at the other center
      if (t < mid && seg > 0) {
        other = &placed[seg - 1];
        double omid = 0.5 * (other->start + other->end);
        frac = (mid - t) / std::max(1e-9, mid - omid);
      } else if (t >= mid && seg + 1 < placed.size()) {
        other = &placed[seg + 1];
        double omid = 0.5 * (other->start + other->end);
        frac = (t - mid) / std::max(1e-9, omid - mid);
      }
      frac = std::clamp(frac, 0.0, 1.0);
      double sample = 0.0;
      for (int f = 0; f < kMaxFormants; ++f) {
        bool cur_sil = cur.label == kSilenceLabel;
        double f_cur = cur_sil ? (other ? other->track.freq[f] : 1000.0)
                               : cur.track.freq[f];
        double a_cur = cur_sil ? 0.0 : cur.track.amp[f];
        double f_oth = f_cur, a_oth = 0.0;
        if (other != nullptr) {
          bool oth_sil = other->label == kSilenceLabel;
          f_oth = oth_sil ? f_cur : other->track.freq[f];
          a_oth = oth_sil ? 0.0 : other->track.amp[f];
        }
        double freq = f_cur + frac * (f_oth - f_cur);
        double amp = a_cur + frac * (a_oth - a_cur);
        phase[f] += two_pi * freq * dt;
        if (phase[f] > two_pi) phase[f] -= two_pi;
        sample += amp * std::sin(phase[f]);
      }
      sample = cfg.amplitude * spk.gain * sample +
               cfg.noise_level * rng.Uniform(-1.0, 1.0);
      signal[i] = sample;
    }

    WavData wav;
    wav.sample_rate = cfg.sample_rate;
    wav.samples.resize(n_samples);
    for (size_t i = 0; i < n_samples; ++i) {
      double s = std::clamp(signal[i], -1.0, 1.0);
      wav.samples[i] = static_cast<int16_t>(std::lround(s * 32767.0));
    }
    const std::string wav_name = utt_id + ".wav";
    WriteWav(audio_dir / wav_name, wav);

    Utterance utt;
    utt.id = utt_id;
    utt.speaker = spk.id;
    utt.audio_path = audio_dir / wav_name;
    utt.sample_rate = cfg.sample_rate;
    utt.duration = static_cast<double>(n_samples) / cfg.sample_rate;
    out.manifest.utterances.push_back(utt);

    for (const auto& p : placed)
      out.phone_table.push_back(
          PhoneSegment{utt_id, spk.id, p.label, p.start, p.end, "", ""});
    for (const auto& w : words) out.word_table.push_back(w);
  }

  // Round-trip through the CSV format fills prev/next and keeps the on-disk
  // table the single source of truth.
  const fs::path phone_csv = out_dir / "phone_alignment.csv";
  const fs::path word_csv = out_dir / "word_alignment.csv";
  WritePhoneAlignments(phone_csv, out.phone_table);
  WriteWordAlignments(word_csv, out.word_table);
  out.phone_table = LoadPhoneAlignments(phone_csv);
  out.word_table = LoadWordAlignments(word_csv);
  out.manifest.phone_alignment = phone_csv;
  out.manifest.word_alignment = word_csv;
  SaveManifest(out_dir / "manifest.json", out.manifest);
  return out;
}

SynthConfig SynthConfigFromJsonFile(const std::filesystem::path& path) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(SlurpFile(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  SynthConfig cfg;
  try {
    cfg.language = j.value("language", cfg.language);
    cfg.subset = j.value("subset", cfg.subset);
    cfg.sample_rate = j.value("sample_rate", cfg.sample_rate);
    cfg.min_phone_duration =
        j.value("min_phone_duration", cfg.min_phone_duration);
    cfg.n_speakers = j.value("speakers", cfg.n_speakers);
    if (j.contains("freq_scale_range")) {
      cfg.freq_scale_lo = j["freq_scale_range"][0].get<double>();
      cfg.freq_scale_hi = j["freq_scale_range"][1].get<double>();
    }
    cfg.n_utterances = j.value("utterances", cfg.n_utterances);
    if (j.contains("words_per_utterance")) {
      cfg.words_per_utterance_lo = j["words_per_utterance"][0].get<int>();
      cfg.words_per_utterance_hi = j["words_per_utterance"][1].get<int>();
    }
    if (j.contains("gap_range")) {
      cfg.gap_lo = j["gap_range"][0].get<double>();
      cfg.gap_hi = j["gap_range"][1].get<double>();
    }
    cfg.formant_jitter = j.value("formant_jitter", cfg.formant_jitter);
    cfg.amplitude = j.value("amplitude", cfg.amplitude);
    cfg.noise_level = j.value("noise_level", cfg.noise_level);
    for (const auto& [label, jp] : j.at("phones").items()) {
      PhoneProto p;
      p.formants = jp.at("formants").get<std::vector<double>>();
      p.amplitudes = jp.at("amplitudes").get<std::vector<double>>();
      if (jp.contains("duration_range")) {
        p.duration_lo = jp["duration_range"][0].get<double>();
        p.duration_hi = jp["duration_range"][1].get<double>();
      }
      cfg.phones[label] = p;
    }
    for (const auto& [word, jp] : j.at("lexicon").items())
      cfg.lexicon[word] = jp.get<std::vector<std::string>>();
    if (j.contains("merge")) {
      cfg = MergePhones(cfg, j["merge"].at("phones").get<std::vector<std::string>>(),
                        j["merge"].at("into").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return cfg;
}

}  // namespace phonelearn
