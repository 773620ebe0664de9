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
#include <optional>
#include <string>
#include <vector>

#include "univdef/finite_field.hpp"
#include "univdef/formula.hpp"
#include "univdef/tri.hpp"

namespace univdef {

// Evaluation domain: a finite field (exhaustive) or Q / F_p(T) (bounded search).
struct Domain {
  enum class Kind { kFinite, kGlobal };
  Kind kind = Kind::kGlobal;
  std::optional<FiniteField> finite;
  FieldDesc field;

  static Domain of(const FiniteField& f);
  static Domain of(const FieldDesc& f);
  // "F9", "GF(9)", "Q", "F2(T)".
  static Domain parse(const std::string& text);
  std::string name() const;
};

class FiniteEvaluator {
 public:
  // Free variables of f must all appear in `free_order`.
  FiniteEvaluator(const Formula& f, const FiniteField& field, std::vector<std::string> free_order);
  ~FiniteEvaluator();
  FiniteEvaluator(const FiniteEvaluator&) = delete;
  FiniteEvaluator& operator=(const FiniteEvaluator&) = delete;

  bool operator()(const std::vector<std::uint32_t>& values) const;

  struct Impl;

 private:
  Impl* impl_;
};

bool eval_finite(const Formula& f, const FiniteField& field, const std::map<std::string, std::uint32_t>& assignment);
// All assignments to `vars` in lexicographic order (first variable slowest).
std::vector<bool> truth_table(const Formula& f, const FiniteField& field, const std::vector<std::string>& vars);

struct GlobalBudget {
  std::size_t nodes = 200000;
  int height = 4;  // enumeration height for unsolved variables
  std::size_t max_clauses = 4096;
};

struct GlobalEval {
  Tri value = Tri::kUnknown;
  // Witness for true existential formulas, counterexample for false universal ones.
  std::map<std::string, FieldElement> witness;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
  // The search was complete and found nothing. Reported separately: the value
  // stays unknown, since witness search is one-sided by contract.
  bool refuted = false;
};

FieldElement eval_term(const Term& t, const FieldDesc& field, const std::map<std::string, FieldElement>& assignment);

// Existential: true with a witness, or unknown. Universal: false with a
// counterexample, or unknown. Quantifier-free: exact.
GlobalEval eval_global(const Formula& f, const FieldDesc& field,
                       const std::map<std::string, FieldElement>& assignment, const GlobalBudget& budget = {});

// Re-checks a witness from eval_global for an existential formula: every
// quantifier takes its witness value and the matrix is evaluated exactly.
// Bound names must be distinct.
bool check_witness(const Formula& f, const FieldDesc& field, const std::map<std::string, FieldElement>& assignment,
                   const std::map<std::string, FieldElement>& witness);

}  // namespace univdef
