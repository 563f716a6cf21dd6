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
#include <cstdlib>

#include "doctest.h"
#include "sheetlaw/fields.hpp"
#include "sheetlaw/linalg.hpp"
#include "sheetlaw/parallel.hpp"
#include "sheetlaw/spectral.hpp"
#include "sheetlaw/verify.hpp"

using namespace sheetlaw;

TEST_CASE("worker count honors the environment override") {
  setenv("SHEETLAW_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("SHEETLAW_THREADS", "bogus", 1);
  CHECK(worker_count() >= 1);
  unsetenv("SHEETLAW_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("parallel and serial sheet samplers agree bitwise") {
  for (const char* threads : {"1", "2", "5"}) {
    setenv("SHEETLAW_THREADS", threads, 1);
    const GridField par = sample_sheet(24, 123, 9);
    const GridField ser = sample_sheet_serial(24, 123, 9);
    CHECK(par.values == ser.values);
    CHECK(par.edge_row == ser.edge_row);
    CHECK(par.edge_col == ser.edge_col);
    CHECK(par.corner == ser.corner);
  }
  unsetenv("SHEETLAW_THREADS");
}

TEST_CASE("parallel and serial gram assembly agree bitwise") {
  const CovKernel k(ProcessKind::TiedDownB0, CenteringKind::FullMean);
  setenv("SHEETLAW_THREADS", "4", 1);
  const linalg::Matrix a = grid_gram(k, 12);
  unsetenv("SHEETLAW_THREADS");
  const linalg::Matrix b = grid_gram_serial(k, 12);
  CHECK(a.a == b.a);
}

TEST_CASE("mc verdicts are identical across worker counts") {
  VerifyConfig cfg;
  cfg.n = 16;
  cfg.n1d = 64;
  cfg.samples = 2000;  // below the power threshold: flagged inconclusive
  cfg.seed = 5;
  setenv("SHEETLAW_THREADS", "1", 1);
  const auto r1 = verify_mc(IdentityId::FUB2, cfg).to_json().dump();
  setenv("SHEETLAW_THREADS", "4", 1);
  const auto r2 = verify_mc(IdentityId::FUB2, cfg).to_json().dump();
  unsetenv("SHEETLAW_THREADS");
  CHECK(r1 == r2);
}
