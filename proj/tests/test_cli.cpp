// Copyright 2026 The noisydk Authors
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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisydk/cli/app.hpp"

using namespace noisydk;
using namespace noisydk::cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"noisydk"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string field_of(const Settings& s) {
  try {
    resolve(s);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("resolved configuration round-trips through settings") {
  RunConfig c;
  c.command = "sweep";
  c.delta0 = 0.1;
  c.delta1 = -2.0 / 3.0;
  c.j = std::sqrt(2.0);
  c.t0 = -std::numeric_limits<double>::infinity();
  c.seed = 0xfeedbeefULL;
  c.variant = Variant::as_printed;
  c.op = "oracle";
  CHECK(resolve(to_settings(c)) == c);

  std::istringstream text(to_config_text(c));
  CHECK(resolve(parse_settings(text)) == c);
}

TEST_CASE("settings files: comments, blanks, unknown keys") {
  std::istringstream ok("# header\n\n delta0 = 3.5  # trailing\nseed=9\n");
  const Settings s = parse_settings(ok);
  CHECK(s.size() == 2);
  CHECK(s.at("delta0") == "3.5");
  CHECK(s.at("seed") == "9");

  std::istringstream bad("delta0 = 1\ndelta2 = 4\n");
  try {
    parse_settings(bad);
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "delta2");
  }
  std::istringstream noeq("delta0 1\n");
  CHECK_THROWS_AS(parse_settings(noeq), ConfigError);
}

TEST_CASE("validation names the offending field") {
  CHECK(field_of({{"tau_c", "-1"}}) == "tau_c");
  CHECK(field_of({{"t_cap", "0"}}) == "t_cap");
  CHECK(field_of({{"delta0", "abc"}}) == "delta0");
  CHECK(field_of({{"delta1", "inf"}}) == "delta1");
  CHECK(field_of({{"points", "1"}}) == "points");
  CHECK(field_of({{"points", "-3"}}) == "points");
  CHECK(field_of({{"format", "xml"}}) == "format");
  CHECK(field_of({{"variant", "printed"}}) == "variant");
  CHECK(field_of({{"lo", "3"}, {"hi", "1"}}) == "hi");
  CHECK(field_of({{"t_max", "5"}}) == "t_max");
  CHECK(field_of({{"t0", "inf"}}).empty());
}

TEST_CASE("flags override the file, the file overrides panel defaults") {
  const std::string path = "test_cli_precedence.conf";
  {
    std::ofstream f(path);
    f << "points = 4\nlo = 1\ndelta1 = 3\n";
  }
  const Outcome file_only = invoke({"fig2", "a", "--config", path.c_str()});
  REQUIRE(file_only.code == 0);
  auto rows = csv_rows(file_only.out);
  REQUIRE(rows.size() == 5);
  CHECK(std::stod(rows[1][0]) == 1.0);   // lo from the file
  CHECK(std::stod(rows[4][0]) == 6.0);   // hi from the panel default

  const Outcome flagged =
      invoke({"fig2", "a", "--config", path.c_str(), "--points", "3", "--lo", "0"});
  REQUIRE(flagged.code == 0);
  rows = csv_rows(flagged.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[1][0]) == 0.0);
  CHECK(std::stod(rows[2][0]) == 3.0);
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(invoke({"fig2", "a", "--tau-c", "-1"}).code == kExitInvalid);
  CHECK(invoke({"fig2", "e"}).code == kExitInvalid);
  CHECK(invoke({"fig2"}).code == kExitInvalid);
  CHECK(invoke({"--bogus"}).code == kExitInvalid);
  CHECK(invoke({"sweep", "--op", "mc", "--axis", "j"}).code == kExitInvalid);
  CHECK(invoke({"sweep", "--op", "rz", "--delta1", "0", "--axis", "delta1"}).code ==
        kExitInvalid);
  CHECK(invoke({"fig2", "a", "--config", "does-not-exist.conf"}).code == kExitInvalid);
  const Outcome bad = invoke({"fig2", "a", "--delta0", "x"});
  CHECK(bad.err.find("delta0") != std::string::npos);
  CHECK(invoke({"--version"}).code == kExitOk);
}

TEST_CASE("verify passes and exits 0") {
  const Outcome v = invoke({"verify"});
  INFO(v.err);
  CHECK(v.code == kExitOk);
  const auto rows = csv_rows(v.out);
  REQUIRE(rows.size() > 10);
  CHECK(rows[0][0] == "kind");
}


TEST_CASE("identical invocations give identical bytes") {
  const Outcome a = invoke({"fig2", "b", "--points", "7"});
  const Outcome b = invoke({"fig2", "b", "--points", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const Outcome w1 = invoke({"sweep", "--op", "mc", "--axis", "sigma", "--lo", "0.5",
                             "--hi", "1", "--points", "2", "--trajectories", "8",
                             "--seed", "5", "--workers", "1"});
  const Outcome w3 = invoke({"sweep", "--op", "mc", "--axis", "sigma", "--lo", "0.5",
                             "--hi", "1", "--points", "2", "--trajectories", "8",
                             "--seed", "5", "--workers", "3"});
  REQUIRE(w1.code == 0);
  CHECK(w1.out == w3.out);
}

TEST_CASE("JSON output carries the resolved configuration") {
  const Outcome o = invoke({"fig2", "b", "--points", "3", "--format", "json", "--seed", "11"});
  REQUIRE(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["meta"]["command"] == "fig2");
  CHECK(doc["meta"]["panel"] == "b");
  CHECK(doc["meta"]["seed"] == 11);
  CHECK(doc["meta"]["config"]["points"] == "3");
  CHECK(doc["columns"][0] == "delta0");
  CHECK(doc["rows"].size() == 6);  // delta0 in {0, 4}, three t0 each
}

TEST_CASE("fig2 b defaults to both static detunings") {
  const Outcome o = invoke({"fig2", "b", "--points", "3"});
  const auto rows = csv_rows(o.out);
  REQUIRE(rows.size() == 7);
  CHECK(std::stod(rows[1][0]) == 0.0);
  CHECK(std::stod(rows[4][0]) == 4.0);
  const Outcome one = invoke({"fig2", "b", "--points", "3", "--delta0", "2"});
  CHECK(csv_rows(one.out).size() == 4);
}

TEST_CASE("sweep: Rosen-Zener full transfer on resonance") {
  const Outcome o = invoke({"sweep", "--op", "rz", "--delta0", "0", "--delta1", "0",
                            "--axis", "j", "--lo", "0", "--hi", "1", "--points", "3"});
  REQUIRE(o.code == 0);
  const auto rows = csv_rows(o.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(std::stod(rows[1][1]) - 1.0) < 1e-12);
  CHECK(std::abs(std::stod(rows[2][1])) < 1e-12);
  CHECK(std::abs(std::stod(rows[3][1]) - 1.0) < 1e-12);
}

TEST_CASE("sweep: zero static detuning is symmetric in the flip time") {
  const Outcome o = invoke({"sweep", "--op", "telegraph", "--delta0", "0", "--axis", "t0",
                            "--lo", "-3", "--hi", "3", "--points", "13"});
  REQUIRE(o.code == 0);
  const auto rows = csv_rows(o.out);
  REQUIRE(rows.size() == 14);
  for (std::size_t i = 1; i <= 6; ++i)
    CHECK(std::abs(std::stod(rows[i][1]) - std::stod(rows[14 - i][1])) < 1e-8);
}

TEST_CASE("sweep: closed form agrees with the oracle") {
  const Outcome a = invoke({"sweep", "--op", "telegraph", "--axis", "t0", "--lo", "-2",
                            "--hi", "2", "--points", "3"});
  const Outcome b = invoke({"sweep", "--op", "oracle-flip", "--axis", "t0", "--lo", "-2",
                            "--hi", "2", "--points", "3"});
  const auto ra = csv_rows(a.out), rb = csv_rows(b.out);
  REQUIRE(ra.size() == 4);
  REQUIRE(rb.size() == 4);
  for (std::size_t i = 1; i < 4; ++i)
    CHECK(std::abs(std::stod(ra[i][1]) - std::stod(rb[i][1])) < 1e-6);
}

TEST_CASE("output to a file") {
  const std::string path = "test_cli_out.csv";
  const Outcome o = invoke({"fig2", "c", "--points", "2", "--out", path.c_str()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header.rfind("delta1,", 0) == 0);
  std::remove(path.c_str());
  CHECK(invoke({"fig2", "c", "--out", "/nonexistent-dir/x.csv"}).code == kExitInvalid);
}
