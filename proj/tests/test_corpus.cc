// tests/test_corpus.cc

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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "corpus/alignment.h"
#include "corpus/chunks.h"
#include "corpus/manifest.h"
#include "corpus/pairs.h"
#include "corpus/synth.h"
#include "corpus/wav.h"
#include "util/error.h"
#include "util/io.h"
#include "util/rng.h"

using namespace phonelearn;
namespace fs = std::filesystem;

namespace {

fs::path TempDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("phonelearn_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path WriteTempCsv(const std::string& name, const std::string& body) {
  fs::path path = TempDir("csv") / name;
  SpewFile(path, body);
  return path;
}

SynthConfig SmallSynthConfig() {
  SynthConfig cfg;
  cfg.language = "A";
  cfg.subset = "train";
  cfg.n_speakers = 2;
  cfg.n_utterances = 6;
  cfg.words_per_utterance_lo = 2;
  cfg.words_per_utterance_hi = 4;
  cfg.phones["a"] = {{700, 1100, 2400}, {1.0, 0.6, 0.3}, 0.06, 0.12};
  cfg.phones["R"] = {{490, 1350, 1690}, {1.0, 0.6, 0.4}, 0.06, 0.12};
  cfg.phones["L"] = {{360, 1300, 2880}, {1.0, 0.6, 0.4}, 0.06, 0.12};
  cfg.lexicon["aRa"] = {"a", "R", "a"};
  cfg.lexicon["aLa"] = {"a", "L", "a"};
  return cfg;
}

}  // namespace

TEST_CASE("phone alignment computes prev/next from adjacency") {
  auto path = WriteTempCsv("pat.csv",
                           "utterance,speaker,label,start,end\n"
                           "u1,s1,p,0.0,0.1\n"
                           "u1,s1,a,0.1,0.2\n"
                           "u1,s1,t,0.2,0.3\n");
  auto segments = LoadPhoneAlignments(path);
  REQUIRE(segments.size() == 3);
  CHECK(segments[1].phone == "a");
  CHECK(segments[1].prev == "p");
  CHECK(segments[1].next == "t");
  CHECK(segments[0].prev == kBoundaryMarker);
  CHECK(segments[2].next == kBoundaryMarker);
}

TEST_CASE("single-segment utterance gets boundary markers on both sides") {
  auto path = WriteTempCsv("single.csv",
                           "utterance,speaker,label,start,end\n"
                           "u1,s1,a,0.0,0.2\n");
  auto segments = LoadPhoneAlignments(path);
  REQUIRE(segments.size() == 1);
  CHECK(segments[0].prev == kBoundaryMarker);
  CHECK(segments[0].next == kBoundaryMarker);
}

TEST_CASE("alignment rows with end <= start are rejected with the line") {
  auto path = WriteTempCsv("bad.csv",
                           "utterance,speaker,label,start,end\n"
                           "u1,s1,a,0.0,0.1\n"
                           "u1,s1,b,0.3,0.2\n");
  try {
    LoadPhoneAlignments(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
}

TEST_CASE("overlapping segments within an utterance are a validation error") {
  auto path = WriteTempCsv("overlap.csv",
                           "utterance,speaker,label,start,end\n"
                           "u1,s1,a,0.0,0.15\n"
                           "u1,s1,b,0.1,0.2\n");
  CHECK_THROWS_AS(LoadPhoneAlignments(path), DataError);
}

TEST_CASE("alignment write/load round trip preserves the table") {
  Rng rng(99);
  std::vector<PhoneSegment> table;
  for (int u = 0; u < 5; ++u) {
    double t = 0.0;
    for (int s = 0; s < 8; ++s) {
      double d = 0.05 + 0.2 * rng.Uniform();
      // 1 ms grid so the fixed-precision format is exact.
      d = std::round(d * 1000.0) / 1000.0;
      PhoneSegment seg;
      seg.utterance = "u" + std::to_string(u);
      seg.speaker = "s" + std::to_string(u % 2);
      seg.phone = std::string(1, static_cast<char>('a' + rng.UniformInt(5)));
      seg.start = t;
      seg.end = t + d;
      table.push_back(seg);
      t += d;
    }
  }
  auto path = TempDir("roundtrip") / "phones.csv";
  WritePhoneAlignments(path, table);
  auto back = LoadPhoneAlignments(path);
  REQUIRE(back.size() == table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    CHECK(back[i].utterance == table[i].utterance);
    CHECK(back[i].phone == table[i].phone);
    CHECK(back[i].start == doctest::Approx(table[i].start).epsilon(1e-9));
    CHECK(back[i].end == doctest::Approx(table[i].end).epsilon(1e-9));
  }
  // prev/next agree with a brute-force recomputation: for each segment,
  // scan all rows of its utterance for the closest earlier/later span.
  for (size_t i = 0; i < back.size(); ++i) {
    std::string expect_prev = kBoundaryMarker, expect_next = kBoundaryMarker;
    double best_prev = -1e9, best_next = 1e9;
    for (size_t j = 0; j < back.size(); ++j) {
      if (j == i || back[j].utterance != back[i].utterance) continue;
      if (back[j].start < back[i].start && back[j].start > best_prev) {
        best_prev = back[j].start;
        expect_prev = back[j].phone;
      }
      if (back[j].start > back[i].start && back[j].start < best_next) {
        best_next = back[j].start;
        expect_next = back[j].phone;
      }
    }
    CHECK(back[i].prev == expect_prev);
    CHECK(back[i].next == expect_next);
  }
}

TEST_CASE("extract filters by label and minimum duration") {
  std::vector<PhoneSegment> table;
  PhoneSegment e{"u1", "s1", "e", 0.0, 0.05, "#", "#"};
  PhoneSegment e2{"u1", "s1", "e", 0.1, 0.2, "#", "#"};
  PhoneSegment o{"u1", "s1", "o", 0.3, 0.5, "#", "#"};
  table = {e, e2, o};

  SUBCASE("80 ms threshold removes the 50 ms token") {
    auto out = ExtractPhoneSegments(table, "e", "E", 0.08);
    REQUIRE(out.size() == 1);
    CHECK(out[0].start == doctest::Approx(0.1));
  }
  SUBCASE("zero threshold is an identity filter on the label match") {
    auto out = ExtractPhoneSegments(table, "e", "o", 0.0);
    CHECK(out.size() == 3);
  }
  SUBCASE("absent phones give an empty list, not an error") {
    auto out = ExtractPhoneSegments(table, "x", "y", 0.0);
    CHECK(out.empty());
  }
}

namespace {
std::vector<WordToken> TokensOf(const std::string& word, int n,
                                const std::string& speaker = "s1") {
  std::vector<WordToken> out;
  for (int i = 0; i < n; ++i)
    out.push_back(
        WordToken{"u" + std::to_string(i), speaker, word, 0.1 * i,
                  0.1 * i + 0.08});
  return out;
}
}  // namespace

TEST_CASE("word pairs: all C(n,2) pairs under the cap") {
  auto tokens = TokensOf("dog", 3);
  auto pairs = MakeWordPairs(tokens, 10, 1);
  CHECK(pairs.size() == 3);
}

TEST_CASE("word pairs: per-type cap applies independently") {
  auto tokens = TokensOf("dog", 2);
  auto more = TokensOf("cat", 2);
  tokens.insert(tokens.end(), more.begin(), more.end());
  auto pairs = MakeWordPairs(tokens, 1, 1);
  CHECK(pairs.size() == 2);
}

TEST_CASE("word pairs are deterministic, same-word, distinct") {
  Rng rng(5);
  std::vector<WordToken> tokens;
  for (const char* w : {"ba", "di", "gu"}) {
    int n = 2 + static_cast<int>(rng.UniformInt(6));
    auto t = TokensOf(w, n);
    tokens.insert(tokens.end(), t.begin(), t.end());
  }
  auto p1 = MakeWordPairs(tokens, 4, 77);
  auto p2 = MakeWordPairs(tokens, 4, 77);
  REQUIRE(p1.size() == p2.size());
  for (size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].a.word == p1[i].b.word);
    bool same_token = p1[i].a.utterance == p1[i].b.utterance &&
                      p1[i].a.start == p1[i].b.start;
    CHECK_FALSE(same_token);
    CHECK(p1[i].a.utterance == p2[i].a.utterance);
    CHECK(p1[i].b.utterance == p2[i].b.utterance);
  }
}

TEST_CASE("chunks: degenerate duration distribution is reproduced exactly") {
  Manifest m;
  m.language = "A";
  m.subset = "train";
  for (int i = 0; i < 3; ++i) {
    Utterance u;
    u.id = "u" + std::to_string(i);
    u.speaker = "s";
    u.sample_rate = 16000;
    u.duration = 10.0;
    m.utterances.push_back(u);
  }
  std::vector<WordToken> words = {{"u0", "s", "w", 1.0, 1.5}};
  auto chunks = SampleChunks(m, words, 50, 9);
  for (const auto& c : chunks) {
    CHECK(c.end - c.start == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.start >= 0.0);
    CHECK(c.end <= 10.0 + 1e-12);
  }
}

TEST_CASE("chunks: n = 0 is rejected") {
  Manifest m;
  Utterance u;
  u.id = "u0";
  u.speaker = "s";
  u.sample_rate = 16000;
  u.duration = 5.0;
  m.utterances.push_back(u);
  std::vector<WordToken> words = {{"u0", "s", "w", 0.0, 0.5}};
  CHECK_THROWS_AS(SampleChunks(m, words, 0, 1), UsageError);
}

TEST_CASE("chunks: oversized duration raises an error") {
  Manifest m;
  Utterance u;
  u.id = "u0";
  u.speaker = "s";
  u.sample_rate = 16000;
  u.duration = 1.0;
  m.utterances.push_back(u);
  std::vector<WordToken> words = {{"u0", "s", "w", 0.0, 2.0}};  // 2 s word
  CHECK_THROWS_AS(SampleChunks(m, words, 5, 1), DataError);
}

// Two-sample Kolmogorov-Smirnov against the source duration sample.
TEST_CASE("chunk durations match the source distribution (KS)") {
  Manifest m;
  for (int i = 0; i < 4; ++i) {
    Utterance u;
    u.id = "u" + std::to_string(i);
    u.speaker = "s";
    u.sample_rate = 16000;
    u.duration = 30.0;
    m.utterances.push_back(u);
  }
  Rng rng(2024);
  std::vector<WordToken> words;
  for (int i = 0; i < 400; ++i) {
    double d = 0.1 + 0.5 * rng.Uniform();
    words.push_back(WordToken{"u0", "s", "w", 0.0, d});
  }
  const size_t n = 10000;
  auto chunks = SampleChunks(m, words, n, 31);
  std::vector<double> source, sampled;
  for (const auto& w : words) source.push_back(w.Duration());
  for (const auto& c : chunks) sampled.push_back(c.end - c.start);
  std::sort(source.begin(), source.end());
  std::sort(sampled.begin(), sampled.end());
  // KS statistic over the merged grid.
  double ks = 0.0;
  size_t i = 0, j = 0;
  while (i < source.size() && j < sampled.size()) {
    double x = std::min(source[i], sampled[j]);
    while (i < source.size() && source[i] <= x) ++i;
    while (j < sampled.size() && sampled[j] <= x) ++j;
    ks = std::max(ks, std::abs(static_cast<double>(i) / source.size() -
                               static_cast<double>(j) / sampled.size()));
  }
  // alpha = 0.001 critical value for the two-sample statistic.
  const double critical =
      1.95 * std::sqrt((source.size() + sampled.size()) /
                       (static_cast<double>(source.size()) * sampled.size()));
  CHECK(ks < critical);
}

TEST_CASE("synth merge rewrites inventory and lexicon") {
  SynthConfig base = SmallSynthConfig();
  SynthConfig merged = MergePhones(base, {"R", "L"}, "L");
  CHECK(merged.phones.count("R") == 0);
  CHECK(merged.phones.count("L") == 1);
  // Former minimal pair collapses to a homophone.
  CHECK(merged.lexicon.size() == 1);
  CHECK(merged.lexicon.begin()->first == "aLa");
  // Averaged prototype.
  CHECK(merged.phones["L"].formants[2] ==
        doctest::Approx(0.5 * (1690 + 2880)));
}

TEST_CASE("synth generates valid audio, exact alignments, both labels") {
  auto dir = TempDir("synth");
  SynthConfig cfg = SmallSynthConfig();
  auto out = SynthGenerate(cfg, dir, 7);
  CHECK(out.manifest.utterances.size() == 6);

  std::set<std::string> phones;
  for (const auto& s : out.phone_table) phones.insert(s.phone);
  CHECK(phones.count("R") == 1);
  CHECK(phones.count("L") == 1);

  SynthConfig merged_cfg = MergePhones(cfg, {"R", "L"}, "L");
  merged_cfg.language = "B";
  auto merged_out = SynthGenerate(merged_cfg, TempDir("synthB"), 7);
  std::set<std::string> merged_phones;
  for (const auto& s : merged_out.phone_table) merged_phones.insert(s.phone);
  CHECK(merged_phones.count("R") == 0);
  CHECK(merged_phones.count("L") == 1);

  for (const auto& u : out.manifest.utterances) {
    WavData wav = ReadWav(u.audio_path);
    CHECK(wav.sample_rate == 16000);
    CHECK(wav.Duration() == doctest::Approx(u.duration).epsilon(1e-6));
  }
  // Every aligned span lies inside its utterance.
  std::map<std::string, double> durations;
  for (const auto& u : out.manifest.utterances) durations[u.id] = u.duration;
  for (const auto& s : out.phone_table) {
    CHECK(s.start >= 0.0);
    CHECK(s.end <= durations[s.utterance] + 1e-9);
    CHECK(s.end - s.start >= 0.0);
  }
  // Phone (non-silence) durations respect the configured minimum.
  for (const auto& s : out.phone_table)
    if (s.phone != "sil")
      CHECK(s.end - s.start >= cfg.min_phone_duration - 1e-9);
}

TEST_CASE("synth is bit-deterministic given the seed") {
  SynthConfig cfg = SmallSynthConfig();
  cfg.n_utterances = 3;
  auto d1 = TempDir("synth_det1");
  auto d2 = TempDir("synth_det2");
  auto o1 = SynthGenerate(cfg, d1, 123);
  auto o2 = SynthGenerate(cfg, d2, 123);
  for (size_t i = 0; i < o1.manifest.utterances.size(); ++i) {
    CHECK(HashFile(o1.manifest.utterances[i].audio_path) ==
          HashFile(o2.manifest.utterances[i].audio_path));
  }
  CHECK(SlurpFile(d1 / "phone_alignment.csv") ==
        SlurpFile(d2 / "phone_alignment.csv"));
  CHECK(SlurpFile(d1 / "word_alignment.csv") ==
        SlurpFile(d2 / "word_alignment.csv"));

  auto o3 = SynthGenerate(cfg, TempDir("synth_det3"), 124);
  CHECK(HashFile(o1.manifest.utterances[0].audio_path) !=
        HashFile(o3.manifest.utterances[0].audio_path));
}

TEST_CASE("synth rejects a word using a phone outside the inventory") {
  SynthConfig cfg = SmallSynthConfig();
  cfg.lexicon["bad"] = {"a", "q"};
  CHECK_THROWS_AS(SynthGenerate(cfg, TempDir("synth_bad"), 1), DataError);
}

TEST_CASE("manifest save/load round trip") {
  auto dir = TempDir("manifest");
  Manifest m;
  m.language = "A";
  m.subset = "test1";
  m.audio_dir = dir / "audio";
  m.phone_alignment = dir / "phones.csv";
  Utterance u;
  u.id = "u0";
  u.speaker = "s0";
  u.audio_path = m.audio_dir / "u0.wav";
  u.sample_rate = 16000;
  u.duration = 2.5;
  m.utterances.push_back(u);
  SaveManifest(dir / "manifest.json", m);
  Manifest back = LoadManifest(dir / "manifest.json");
  CHECK(back.language == "A");
  CHECK(back.subset == "test1");
  REQUIRE(back.utterances.size() == 1);
  CHECK(back.utterances[0].id == "u0");
  CHECK(back.utterances[0].duration == 2.5);
  CHECK(back.Find("u0") != nullptr);
  CHECK(back.Find("nope") == nullptr);
}

TEST_CASE("manifest rejects duplicate utterance ids") {
  auto dir = TempDir("manifest_dup");
  SpewFile(dir / "m.json", R"({
    "language": "A", "subset": "t", "audio_dir": "audio",
    "alignments": {},
    "utterances": [
      {"id": "u0", "speaker": "s", "audio": "u0.wav", "sample_rate": 16000, "duration": 1.0},
      {"id": "u0", "speaker": "s", "audio": "u1.wav", "sample_rate": 16000, "duration": 1.0}
    ]})");
  CHECK_THROWS_AS(LoadManifest(dir / "m.json"), DataError);
}

TEST_CASE("wav io round trips 16-bit mono") {
  auto dir = TempDir("wav");
  WavData wav;
  wav.sample_rate = 16000;
  Rng rng(55);
  wav.samples.resize(1600);
  for (auto& s : wav.samples)
    s = static_cast<int16_t>(rng.UniformInt(65536) - 32768);
  WriteWav(dir / "x.wav", wav);
  WavData back = ReadWav(dir / "x.wav");
  CHECK(back.sample_rate == wav.sample_rate);
  REQUIRE(back.samples.size() == wav.samples.size());
  CHECK(std::equal(back.samples.begin(), back.samples.end(),
                   wav.samples.begin()));
  SpewFile(dir / "bad.wav", "not a wav at all");
  CHECK_THROWS_AS(ReadWav(dir / "bad.wav"), DataError);
}
