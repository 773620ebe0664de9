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
// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdio>
#include <iostream>
#include <string>

#include "univdef/suites.hpp"

using namespace univdef;

namespace {

struct Criterion {
  int number;
  const char* title;
  const char* suite;
  double seconds_limit;  // 0: no limit
};

const Criterion kCriteria[] = {
    {1, "rank ledger", "rank-ledger", 1},
    {2, "reciprocity parity", "reciprocity-parity", 30},
    {3, "local test vs oracle", "local-crosscheck", 120},
    {4, "J/H identities", "jh-identities", 120},
    {5, "main theorem, both inclusions", "main-theorem", 300},
    {6, "synthesis certification", "synthesis", 0},
    {7, "transformation soundness", "transformations", 60},
    {8, "finitely generated rings", "fgring", 60},
    {9, "instantiated-formula spot checks", "spot-checks", 0},
};

}  // namespace

int main(int argc, char** argv) {
  SuiteConfig cfg;
  if (argc > 1) cfg.corpus = argv[1];
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    std::string status = "PASS", why;
    double secs = 0;
    try {
      Report r = run_suite(c.suite, cfg);
      secs = r.seconds;
      for (const Check& k : r.checks) {
        if (k.outcome == Outcome::kPass) continue;
        status = "FAIL";
        why += (why.empty() ? "" : "; ") + k.name + " [" + k.field + "] " + to_string(k.outcome);
        if (!k.failures.empty()) why += ": " + k.failures.front().input + ": " + k.failures.front().detail;
      }
      if (c.seconds_limit > 0 && secs > c.seconds_limit) {
        status = "FAIL";
        why += (why.empty() ? "" : "; ") + std::string("over the time limit");
      }
    } catch (const std::exception& e) {
      status = "FAIL";
      why = std::string("exception: ") + e.what();
    }
    if (status != "PASS") ++failures;
    char t[32];
    std::snprintf(t, sizeof t, "%.2f s", secs);
    std::cout << "criterion " << c.number << " " << status << "  " << c.title << " (" << c.suite << ", " << t << ")";
    if (!why.empty()) std::cout << "  -- " << why;
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
