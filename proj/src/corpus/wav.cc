// corpus/wav.cc

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

#include "corpus/wav.h"

#include <cstring>
#include <fstream>

#include "util/error.h"
#include "util/io.h"

namespace phonelearn {

namespace {

constexpr uint16_t kPcmFormat = 1;

void WriteTag(std::ostream& os, const char tag[4]) { os.write(tag, 4); }

std::string ReadTag(std::istream& is) {
  char tag[4];
  is.read(tag, 4);
  if (!is) throw DataError("truncated WAV header");
  return std::string(tag, 4);
}

uint16_t ReadU16(std::istream& is) {
  uint16_t v;
  is.read(reinterpret_cast<char*>(&v), 2);
  if (!is) throw DataError("truncated WAV header");
  return v;
}

}  // namespace

WavData ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open WAV: " + path.string());

  if (ReadTag(in) != "RIFF") throw DataError("not a RIFF file: " + path.string());
  ReadU32(in);  // chunk size
  if (ReadTag(in) != "WAVE") throw DataError("not a WAVE file: " + path.string());

  WavData wav;
  uint16_t channels = 0, bits = 0, format = 0;
  bool got_fmt = false, got_data = false;
  while (in && !(got_fmt && got_data)) {
    std::string tag;
    {
      char t[4];
      in.read(t, 4);
      if (!in) break;
      tag.assign(t, 4);
    }
    uint32_t size = ReadU32(in);
    if (tag == "fmt ") {
      format = ReadU16(in);
      channels = ReadU16(in);
      wav.sample_rate = static_cast<int>(ReadU32(in));
      ReadU32(in);  // byte rate
      ReadU16(in);  // block align
      bits = ReadU16(in);
      if (size > 16) in.seekg(size - 16, std::ios::cur);
      got_fmt = true;
    } else if (tag == "data") {
      if (!got_fmt) throw DataError("WAV data before fmt: " + path.string());
      if (size % 2 != 0) throw DataError("odd WAV data size: " + path.string());
      wav.samples.resize(size / 2);
      in.read(reinterpret_cast<char*>(wav.samples.data()), size);
      if (!in) throw DataError("truncated WAV data: " + path.string());
      got_data = true;
    } else {
      in.seekg(size + (size % 2), std::ios::cur);
    }
  }
  if (!got_fmt || !got_data)
    throw DataError("missing fmt or data chunk: " + path.string());
  if (format != kPcmFormat || bits != 16 || channels != 1)
    throw DataError("expected 16-bit PCM mono: " + path.string());
  return wav;
}

void WriteWav(const std::filesystem::path& path, const WavData& wav) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write WAV: " + path.string());

  const uint32_t data_size = static_cast<uint32_t>(wav.samples.size() * 2);
  WriteTag(out, "RIFF");
  WriteU32(out, 36 + data_size);
  WriteTag(out, "WAVE");
  WriteTag(out, "fmt ");
  WriteU32(out, 16);
  const uint16_t channels = 1, bits = 16;
  out.write(reinterpret_cast<const char*>(&kPcmFormat), 2);
  out.write(reinterpret_cast<const char*>(&channels), 2);
  WriteU32(out, static_cast<uint32_t>(wav.sample_rate));
  WriteU32(out, static_cast<uint32_t>(wav.sample_rate * 2));
  const uint16_t block_align = 2;
  out.write(reinterpret_cast<const char*>(&block_align), 2);
  out.write(reinterpret_cast<const char*>(&bits), 2);
  WriteTag(out, "data");
  WriteU32(out, data_size);
  out.write(reinterpret_cast<const char*>(wav.samples.data()), data_size);
  if (!out) throw DataError("short WAV write: " + path.string());
}

}  // namespace phonelearn
