/* Copyright 2026 The univdef Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <doctest.h>

#include <json.hpp>

#include "univdef/suites.hpp"

using namespace univdef;

TEST_CASE("check outcomes") {
  Check a("a", "Q");
  a.pass();
  CHECK(a.finish().outcome == Outcome::kPass);
  Check b("b", "Q");
  b.pass();
  b.fail("x = 1", "bad");
  CHECK(b.finish().outcome == Outcome::kFail);
  Check c("c", "Q");
  c.pass();
  c.unknown("x = 2", "budget");
  CHECK(c.finish(2).outcome == Outcome::kInconclusive);
  Check d("d", "Q");
  d.pass();
  CHECK(d.finish(2).outcome == Outcome::kFail);
  Check e("e", "Q");
  for (int i = 0; i < 50; ++i) e.fail("p" + std::to_string(i), "bad");
  CHECK(e.failures.size() == Check::kMaxSamples);
  CHECK(e.failed == 50);
}

TEST_CASE("report exit codes and json") {
  Report r;
  r.suite = "demo";
  r.field = "Q";
  Check ok("ok", "Q");
  ok.pass("x = 1", "y = 1");
  r.checks.push_back(ok.finish());
  CHECK(r.exit_code() == 0);
  Check unk("unk", "Q");
  unk.unknown("x = 3", "budget");
  r.checks.push_back(unk.finish());
  CHECK(r.outcome() == Outcome::kInconclusive);
  CHECK(r.exit_code() == 3);
  Check bad("bad", "Q");
  bad.fail("x = 5", "mismatch");
  r.checks.push_back(bad.finish());
  CHECK(r.exit_code() == 1);
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["suite"] == "demo");
  CHECK(j["outcome"] == "fail");
  REQUIRE(j["checks"].size() == 3);
  CHECK(j["checks"][0]["witnesses"][0]["detail"] == "y = 1");
  CHECK(j["checks"][2]["failures"][0]["input"] == "x = 5");
  CHECK(r.to_text().find("FAIL  bad [Q]") != std::string::npos);
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 9);
  CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
  Report r = run_suite("rank-ledger");
  CHECK(r.outcome() == Outcome::kPass);
  Report a = run_suite("reciprocity-parity", {7, 0, ""});
  Report b = run_suite("reciprocity-parity", {7, 0, ""});
  CHECK(a.to_text().substr(0, 40) == b.to_text().substr(0, 40));
  CHECK(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].detail == b.checks[i].detail);
}
