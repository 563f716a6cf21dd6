// Copyright 2026 The sheetlaw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sheetlaw/rng.hpp"

using namespace sheetlaw;

TEST_CASE("philox is deterministic and stream-separated") {
  const auto a = rng::philox4x32(42, 7, 1);
  const auto b = rng::philox4x32(42, 7, 1);
  CHECK(a == b);
  CHECK(rng::philox4x32(42, 7, 2) != a);
  CHECK(rng::philox4x32(42, 8, 1) != a);
  CHECK(rng::philox4x32(43, 7, 1) != a);
}

TEST_CASE("normal draws have the right moments") {
  const std::size_t n = 400000;
  std::vector<double> z(n);
  rng::fill_normals(z, 123, 0);
  double m1 = 0, m2 = 0, m4 = 0;
  for (double v : z) {
    m1 += v;
    m2 += v * v;
    m4 += v * v * v * v;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  // 5 sigma bands at this sample size
  CHECK(std::fabs(m1) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(m2 - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::fabs(m4 - 3.0) < 5.0 * std::sqrt(96.0 / n));
}

TEST_CASE("normal draws across streams are uncorrelated") {
  const std::size_t n = 200000;
  std::vector<double> a(n), b(n);
  rng::fill_normals(a, 9, 1);
  rng::fill_normals(b, 9, 2);
  double dot = 0;
  for (std::size_t i = 0; i < n; ++i) dot += a[i] * b[i];
  CHECK(std::fabs(dot / n) < 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("fill_normals matches normal_pair blocks") {
  std::vector<double> z(5);
  rng::fill_normals(z, 77, 3);
  const auto p0 = rng::normal_pair(77, 3, 0);
  const auto p1 = rng::normal_pair(77, 3, 1);
  const auto p2 = rng::normal_pair(77, 3, 2);
  CHECK(z[0] == p0.first);
  CHECK(z[1] == p0.second);
  CHECK(z[2] == p1.first);
  CHECK(z[3] == p1.second);
  CHECK(z[4] == p2.first);
}

TEST_CASE("uniforms stay inside the open unit interval") {
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = rng::uniform(5, 0, k);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}
