// util/io.cc

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

#include "util/io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "util/error.h"
#include "util/rng.h"

namespace phonelearn {

static_assert(std::endian::native == std::endian::little,
              "big-endian hosts need byte swapping here");

template <typename T>
static void WritePod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
static T ReadPod(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw DataError("unexpected end of binary stream");
  return v;
}

void WriteU32(std::ostream& os, uint32_t v) { WritePod(os, v); }
void WriteU64(std::ostream& os, uint64_t v) { WritePod(os, v); }
void WriteF32(std::ostream& os, float v) { WritePod(os, v); }
void WriteF64(std::ostream& os, double v) { WritePod(os, v); }

void WriteString(std::ostream& os, const std::string& s) {
  WriteU32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void WriteF32Array(std::ostream& os, const float* data, size_t n) {
  os.write(reinterpret_cast<const char*>(data),
           static_cast<std::streamsize>(n * sizeof(float)));
}

void WriteF64Array(std::ostream& os, const double* data, size_t n) {
  os.write(reinterpret_cast<const char*>(data),
           static_cast<std::streamsize>(n * sizeof(double)));
}

uint32_t ReadU32(std::istream& is) { return ReadPod<uint32_t>(is); }
uint64_t ReadU64(std::istream& is) { return ReadPod<uint64_t>(is); }
float ReadF32(std::istream& is) { return ReadPod<float>(is); }
double ReadF64(std::istream& is) { return ReadPod<double>(is); }

std::string ReadString(std::istream& is) {
  uint32_t n = ReadU32(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) throw DataError("unexpected end of binary stream");
  return s;
}

void ReadF32Array(std::istream& is, float* data, size_t n) {
  is.read(reinterpret_cast<char*>(data),
          static_cast<std::streamsize>(n * sizeof(float)));
  if (!is) throw DataError("unexpected end of binary stream");
}

void ReadF64Array(std::istream& is, double* data, size_t n) {
  is.read(reinterpret_cast<char*>(data),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw DataError("unexpected end of binary stream");
}

std::string SlurpFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void SpewFile(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("short write: " + path.string());
}

uint64_t HashFile(const std::filesystem::path& path) {
  return Fnv1a64(SlurpFile(path));
}

}  // namespace phonelearn
