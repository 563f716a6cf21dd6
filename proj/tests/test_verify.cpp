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
#include <string>

#include "doctest.h"
#include "sheetlaw/verify.hpp"

using namespace sheetlaw;

namespace {

VerifyConfig small_cfg() {
  VerifyConfig cfg;
  cfg.n = 16;
  cfg.n1d = 128;
  cfg.samples = 5000;
  cfg.seed = 7;
  cfg.t6i_grid_n = 16;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  VerifyConfig cfg = small_cfg();
  CHECK_NOTHROW(cfg.validate());
  cfg.n = 15;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_cfg();
  cfg.samples = 10;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_cfg();
  cfg.alpha = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_cfg();
  cfg.u_grid.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("spectral channel passes for representative identities") {
  const VerifyConfig cfg = small_cfg();
  for (IdentityId id : {IdentityId::WATSON, IdentityId::FUB1, IdentityId::FUB3,
                        IdentityId::T3P2, IdentityId::T3P3, IdentityId::T6J,
                        IdentityId::SODD_IS_CHALF}) {
    const VerdictReport r = verify_spectral(id, cfg);
    CAPTURE(to_string(id));
    CHECK(r.pass);
    CHECK(r.statistic <= r.threshold);
  }
  CHECK_THROWS_AS(verify_spectral(IdentityId::LEMMA4, cfg), std::invalid_argument);
}

TEST_CASE("closed-form channel passes and rejects unsupported ids") {
  const VerifyConfig cfg = small_cfg();
  for (IdentityId id : {IdentityId::T6I, IdentityId::T6J, IdentityId::T6Y,
                        IdentityId::SODD_IS_CHALF}) {
    const VerdictReport r = verify_closed_form(id, cfg);
    CAPTURE(to_string(id));
    CHECK(r.pass);
  }
  CHECK_THROWS_AS(verify_closed_form(IdentityId::FUB1, cfg), std::invalid_argument);
  // T6I records the printed-vs-derived discrepancy
  const VerdictReport t6i = verify_closed_form(IdentityId::T6I, cfg);
  CHECK(t6i.details["points"][1]["printed_vs_derived_gap"].get<double>() > 1e-3);
}

TEST_CASE("mc channel passes for fast identities") {
  const VerifyConfig cfg = small_cfg();
  for (IdentityId id : {IdentityId::FUB1, IdentityId::FUB4, IdentityId::WATSON,
                        IdentityId::LEMMA4, IdentityId::T6J}) {
    const VerdictReport r = verify_mc(id, cfg);
    CAPTURE(to_string(id));
    CHECK(r.pass);
    CHECK_FALSE(r.inconclusive);
  }
}

TEST_CASE("mc channel flags low-power runs as inconclusive") {
  VerifyConfig cfg = small_cfg();
  cfg.samples = 1000;
  const VerdictReport r = verify_mc(IdentityId::FUB1, cfg);
  CHECK(r.inconclusive);
}

TEST_CASE("T3P1 mc carries the intermediate-identity sub-assertions") {
  const VerifyConfig cfg = small_cfg();
  const VerdictReport r = verify_mc(IdentityId::T3P1, cfg);
  CHECK(r.pass);
  REQUIRE(r.details.contains("sub_assertions"));
  const auto& subs = r.details["sub_assertions"];
  REQUIRE(subs.size() == 7);
  for (const auto& s : subs) {
    CAPTURE(s["name"].get<std::string>());
    CHECK(s["pass"].get<bool>());
  }
}

TEST_CASE("LEMMA4 mc includes the independence check") {
  const VerifyConfig cfg = small_cfg();
  const VerdictReport r = verify_mc(IdentityId::LEMMA4, cfg);
  CHECK(r.pass);
  CHECK(r.details["correlation_pass"].get<bool>());
  CHECK(std::fabs(r.details["sym_antisym_correlation"].get<double>()) <
        r.details["correlation_limit"].get<double>());
}

TEST_CASE("negative control fails on both channels") {
  VerifyConfig cfg = small_cfg();
  const VerdictReport sp = negative_control_spectral(cfg);
  CHECK(sp.pass);  // pass = the falsification was detected
  CHECK(sp.statistic > 0.05);
  const VerdictReport mc = negative_control_mc(cfg);
  CHECK(mc.pass);
  CHECK(mc.details["ks_p_value"].get<double>() < 1e-4);
}

TEST_CASE("monte carlo false-alarm rate stays near alpha") {
  // FUB1 is essentially exact on the grid; over 30 seeds the failure count
  // at alpha = 0.01 should stay inside the binomial 99% band [0, 3]
  VerifyConfig cfg = small_cfg();
  int failures = 0;
  for (std::uint64_t s = 1; s <= 30; ++s) {
    cfg.seed = s;
    if (!verify_mc(IdentityId::FUB1, cfg).pass) ++failures;
  }
  CHECK(failures <= 3);
}

TEST_CASE("spectral gaps shrink under grid refinement") {
  VerifyConfig cfg = small_cfg();
  for (IdentityId id : {IdentityId::T3P1, IdentityId::T3P2, IdentityId::T3P3}) {
    double prev = 1.0;
    for (int n : {16, 32, 64}) {
      cfg.n = n;
      const VerdictReport r = verify_spectral(id, cfg);
      CAPTURE(to_string(id));
      CAPTURE(n);
      CHECK(r.statistic <= prev * 1.05);  // nonincreasing up to noise floor
      prev = r.statistic;
    }
  }
}

TEST_CASE("suite runs every identity and is deterministic") {
  const VerifyConfig cfg = small_cfg();
  const auto reports = run_suite(cfg);
  // 12 identities with a spectral channel, 4 closed-form, 13 MC
  CHECK(reports.size() == 12 + 4 + 13);
  int failures = 0;
  for (const auto& r : reports) {
    CAPTURE(to_string(r.identity));
    CAPTURE(to_string(r.channel));
    CHECK(r.pass);
    if (!r.pass) ++failures;
  }
  CHECK(suite_pass(reports));

  const std::string j1 = suite_to_json(reports, cfg).dump();
  const std::string j2 = suite_to_json(run_suite(cfg), cfg).dump();
  CHECK(j1 == j2);

  // determinism across worker counts
  setenv("SHEETLAW_THREADS", "1", 1);
  const std::string j3 = suite_to_json(run_suite(cfg), cfg).dump();
  unsetenv("SHEETLAW_THREADS");
  CHECK(j1 == j3);
}
