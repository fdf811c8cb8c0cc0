// tests/test_util.cc

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

#include <cmath>
#include <mutex>
#include <set>
#include <sstream>

#include "util/csv.h"
#include "util/error.h"
#include "util/io.h"
#include "util/parallel.h"
#include "util/rng.h"

using namespace phonelearn;

TEST_CASE("rng streams are deterministic and seed-sensitive") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    uint64_t va = a.NextU64();
    CHECK(va == b.NextU64());
  }
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 10; ++i) differs |= a2.NextU64() != c.NextU64();
  CHECK(differs);
}

TEST_CASE("gaussian moments are sane") {
  Rng rng(7);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double g = rng.Gaussian();
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("gamma mean matches shape") {
  Rng rng(11);
  for (double shape : {0.5, 1.0, 3.7}) {
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += rng.Gamma(shape);
    CHECK(std::abs(sum / n - shape) < 0.05 * std::max(1.0, shape));
  }
}

TEST_CASE("dirichlet sums to one") {
  Rng rng(3);
  std::vector<double> alpha = {1.0, 2.0, 0.5, 4.0};
  std::vector<double> out(4);
  rng.Dirichlet(alpha, out);
  double total = 0.0;
  for (double v : out) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("derive seed separates stages") {
  CHECK(DeriveSeed(1, "train:native") != DeriveSeed(1, "train:nonnative"));
  CHECK(DeriveSeed(1, "abx") != DeriveSeed(2, "abx"));
  CHECK(DeriveSeed(5, "x") == DeriveSeed(5, "x"));
}

TEST_CASE("csv round trip and parse errors") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "x"}, {"2", "y"}};
  std::string text = FormatCsv(t);
  CsvTable back = ParseCsv(text, "mem");
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);

  CHECK_THROWS_AS(ParseCsv("a,b\n1\n", "mem"), DataError);
  CHECK_THROWS_AS(ParseCsv("", "mem"), DataError);
}

TEST_CASE("parallel blocks cover the range once, any worker count") {
  const size_t n = 1000;
  for (int workers : {1, 2, 4}) {
    std::vector<int> hits(n, 0);
    ParallelForBlocks(n, 64, workers, [&](size_t, size_t b, size_t e) {
      for (size_t i = b; i < e; ++i) hits[i]++;
    });
    for (size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
  }
}

TEST_CASE("parallel block structure is worker-count invariant") {
  std::set<std::pair<size_t, size_t>> spans1, spans4;
  ParallelForBlocks(1000, 128, 1, [&](size_t, size_t b, size_t e) {
    spans1.insert({b, e});
  });
  std::mutex mu;
  ParallelForBlocks(1000, 128, 4, [&](size_t, size_t b, size_t e) {
    std::lock_guard<std::mutex> lock(mu);
    spans4.insert({b, e});
  });
  CHECK(spans1 == spans4);
}

TEST_CASE("binary io round trip") {
  std::ostringstream out;
  WriteU32(out, 17u);
  WriteF64(out, 3.25);
  WriteString(out, "hello");
  float floats[3] = {1.5f, -2.0f, 0.25f};
  WriteF32Array(out, floats, 3);
  std::istringstream in(out.str());
  CHECK(ReadU32(in) == 17u);
  CHECK(ReadF64(in) == 3.25);
  CHECK(ReadString(in) == "hello");
  float back[3];
  ReadF32Array(in, back, 3);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == floats[i]);
}
