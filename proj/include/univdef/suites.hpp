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
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace univdef {

enum class Outcome { kPass, kFail, kInconclusive };
std::string to_string(Outcome o);

struct Sample {
  std::string input;
  std::string detail;
};

// One named property checked over many points.
struct Check {
  static constexpr std::size_t kMaxSamples = 20;

  std::string name;
  std::string field;
  Outcome outcome = Outcome::kPass;
  std::size_t passed = 0, failed = 0, inconclusive = 0;
  std::string detail;
  std::vector<Sample> failures;
  std::vector<Sample> witnesses;
  std::vector<Sample> unresolved;

  Check(std::string name, std::string field) : name(std::move(name)), field(std::move(field)) {}
  void pass() { ++passed; }
  void pass(const std::string& input, const std::string& witness);
  void fail(const std::string& input, const std::string& why);
  void unknown(const std::string& input, const std::string& why);
  void expect(bool ok, const std::string& input, const std::string& why) {
    if (ok) pass();
    else fail(input, why);
  }
  // Fails on any failure; otherwise needs `min_passed` passes, falling back to
  // inconclusive when unresolved points could have made up the difference.
  Check& finish(std::size_t min_passed = 1);
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  int height = 0;  // 0: suite default
  std::string corpus;  // golden formula file; empty: built-in path
};

struct Report {
  std::string suite;
  std::string field;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  std::vector<Check> checks;
  double seconds = 0;

  Outcome outcome() const;
  // 0 pass, 1 fail, 3 inconclusive only.
  int exit_code() const;
  std::string to_text() const;
  std::string to_json() const;
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown suite.
Report run_suite(const std::string& name, const SuiteConfig& config = {});

}  // namespace univdef
