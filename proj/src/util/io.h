// util/io.h

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

#ifndef PHONELEARN_UTIL_IO_H_
#define PHONELEARN_UTIL_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace phonelearn {

// Little-endian binary primitives. All on-disk formats go through these so
// files are byte-identical across hosts.
void WriteU32(std::ostream& os, uint32_t v);
void WriteU64(std::ostream& os, uint64_t v);
void WriteF32(std::ostream& os, float v);
void WriteF64(std::ostream& os, double v);
void WriteString(std::ostream& os, const std::string& s);  // u32 length + bytes
void WriteF32Array(std::ostream& os, const float* data, size_t n);
void WriteF64Array(std::ostream& os, const double* data, size_t n);

uint32_t ReadU32(std::istream& is);
uint64_t ReadU64(std::istream& is);
float ReadF32(std::istream& is);
double ReadF64(std::istream& is);
std::string ReadString(std::istream& is);
void ReadF32Array(std::istream& is, float* data, size_t n);
void ReadF64Array(std::istream& is, double* data, size_t n);

// Whole-file helpers.
std::string SlurpFile(const std::filesystem::path& path);
void SpewFile(const std::filesystem::path& path, std::string_view bytes);

// 64-bit content hash of a file (FNV-1a over its bytes), for stage caching.
uint64_t HashFile(const std::filesystem::path& path);

}  // namespace phonelearn

#endif  // PHONELEARN_UTIL_IO_H_
