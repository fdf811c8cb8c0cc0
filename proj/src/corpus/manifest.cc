// corpus/manifest.cc

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

#include "corpus/manifest.h"

#include <set>

#include <nlohmann/json.hpp>

#include "util/error.h"
#include "util/io.h"

namespace phonelearn {

using nlohmann::json;

const Utterance* Manifest::Find(const std::string& id) const {
  for (const auto& u : utterances)
    if (u.id == id) return &u;
  return nullptr;
}

Manifest LoadManifest(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(SlurpFile(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  Manifest m;
  const auto base = path.parent_path();
  try {
    m.language = j.at("language").get<std::string>();
    m.subset = j.at("subset").get<std::string>();
    m.audio_dir = base / j.at("audio_dir").get<std::string>();
    const auto& al = j.at("alignments");
    if (al.contains("phone"))
      m.phone_alignment = base / al.at("phone").get<std::string>();
    if (al.contains("word"))
      m.word_alignment = base / al.at("word").get<std::string>();
    std::set<std::string> seen;
    for (const auto& ju : j.at("utterances")) {
      Utterance u;
      u.id = ju.at("id").get<std::string>();
      u.speaker = ju.at("speaker").get<std::string>();
      u.audio_path = m.audio_dir / ju.at("audio").get<std::string>();
      u.sample_rate = ju.at("sample_rate").get<int>();
      u.duration = ju.at("duration").get<double>();
      if (u.duration <= 0.0)
        throw DataError(path.string() + ": utterance '" + u.id +
                        "' has non-positive duration");
      if (u.sample_rate <= 0)
        throw DataError(path.string() + ": utterance '" + u.id +
                        "' has non-positive sample rate");
      if (!seen.insert(u.id).second)
        throw DataError(path.string() + ": duplicate utterance id '" + u.id +
                        "'");
      m.utterances.push_back(std::move(u));
    }
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return m;
}

void SaveManifest(const std::filesystem::path& path, const Manifest& m) {
  const auto base = path.parent_path();
  auto relativize = [&base](const std::filesystem::path& p) {
    auto rel = p.lexically_relative(base);
    return rel.empty() ? p.string() : rel.string();
  };
  json j;
  j["language"] = m.language;
  j["subset"] = m.subset;
  j["audio_dir"] = relativize(m.audio_dir);
  json al = json::object();
  if (!m.phone_alignment.empty()) al["phone"] = relativize(m.phone_alignment);
  if (!m.word_alignment.empty()) al["word"] = relativize(m.word_alignment);
  j["alignments"] = al;
  json utts = json::array();
  for (const auto& u : m.utterances) {
    utts.push_back({{"id", u.id},
                    {"speaker", u.speaker},
                    {"audio", u.audio_path.filename().string()},
                    {"sample_rate", u.sample_rate},
                    {"duration", u.duration}});
  }
  j["utterances"] = utts;
  SpewFile(path, j.dump(2) + "\n");
}

}  // namespace phonelearn
