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
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "sheetlaw_cli_stdout.txt";
  const std::string cmd = std::string(SHEETLAW_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream is(out);
  std::stringstream ss;
  ss << is.rdbuf();
  r.stdout_text = ss.str();
  fs::remove(out);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("simulate is reproducible byte for byte") {
  const fs::path a = fs::temp_directory_path() / "sheetlaw_sim_a.csv";
  const fs::path b = fs::temp_directory_path() / "sheetlaw_sim_b.csv";
  CHECK(run_cli("simulate --process sheet --n 16 --seed 1 --out " + a.string())
            .exit_code == 0);
  CHECK(run_cli("simulate --process sheet --n 16 --seed 1 --out " + b.string())
            .exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  // metadata header present
  CHECK(slurp(a).find("seed=1") != std::string::npos);
  CHECK(run_cli("simulate --process b0 --n 16 --seed 2 --out " + a.string())
            .exit_code == 0);
  CHECK(slurp(a).find("kind=TiedDownB0") != std::string::npos);
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("laplace at zero prints one") {
  const RunResult r = run_cli("laplace --process b0 --u 0");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.substr(0, 1) == "1");
}

TEST_CASE("laplace writes transform curves") {
  const fs::path p = fs::temp_directory_path() / "sheetlaw_curve.csv";
  CHECK(run_cli("laplace --transform t6j --u 0.5,1,2 --out " + p.string())
            .exit_code == 0);
  const std::string text = slurp(p);
  CHECK(text.find("u,value") != std::string::npos);
  fs::remove(p);
}

TEST_CASE("spectrum emits csv and json") {
  const fs::path c = fs::temp_directory_path() / "sheetlaw_spec.csv";
  const fs::path j = fs::temp_directory_path() / "sheetlaw_spec.json";
  CHECK(run_cli("spectrum --kernel b1d --n 64 --out " + c.string() +
                " --json " + j.string())
            .exit_code == 0);
  CHECK(slurp(c).find("rank,eigenvalue") != std::string::npos);
  const auto parsed = nlohmann::json::parse(slurp(j));
  CHECK(parsed["count"] == 64);
  fs::remove(c);
  fs::remove(j);
}

TEST_CASE("cumulants subcommand reports the fubini check") {
  const fs::path j = fs::temp_directory_path() / "sheetlaw_cumu.json";
  CHECK(run_cli("cumulants --phi 2 --n 6 --m-max 4 --out " + j.string())
            .exit_code == 0);
  const auto parsed = nlohmann::json::parse(slurp(j));
  CHECK(parsed["pass"] == true);
  fs::remove(j);
}

TEST_CASE("verify single identity") {
  CHECK(run_cli("verify --identity SODD_IS_CHALF --channel closed-form")
            .exit_code == 0);
  CHECK(run_cli("verify --identity NOPE --channel spectral").exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("simulate --bogus 1").exit_code == 2);
  CHECK(run_cli("simulate --process nope --n 8 --out /tmp/x.csv").exit_code == 2);
}

TEST_CASE("suite writes a report and round-trips identically") {
  const fs::path a = fs::temp_directory_path() / "sheetlaw_suite_a.json";
  const fs::path b = fs::temp_directory_path() / "sheetlaw_suite_b.json";
  const std::string flags =
      " --n 16 --n1d 64 --samples 1000 --seed 7 --t6i-grid-n 16";
  CHECK(run_cli("suite --out " + a.string() + flags).exit_code == 0);
  CHECK(run_cli("suite --out " + b.string() + flags).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto parsed = nlohmann::json::parse(slurp(a));
  CHECK(parsed["reports"].size() == 29);
  fs::remove(a);
  fs::remove(b);
}
