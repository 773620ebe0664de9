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

#include <string>
#include <vector>

#include "univdef/formula.hpp"
#include "univdef/synthesis.hpp"

namespace univdef {

// Z[1/n], F_p[T], or the F_p-span of T^k over a numerical semigroup.
struct FgRingDesc {
  enum class Kind { kLocalizedIntegers, kPolynomial, kMonomial };
  Kind kind = Kind::kLocalizedIntegers;
  Integer n = 1;            // Zinv
  std::uint32_t p = 0;      // FpT, Mono
  std::vector<int> gens;    // Mono, sorted, positive

  // "Zinv:6", "FpT:2", "Mono:2:{2,3}".
  static FgRingDesc parse(const std::string& text);
  std::string to_string() const;
  FieldDesc field() const;
  // Ring generators over the prime ring.
  std::vector<FieldElement> generators() const;
  // Membership of k >= 0 in the semigroup (Mono only).
  bool in_semigroup(int k) const;
};

struct RingAnalysis {
  PlaceSet S;
  FieldElement conductor;
  std::vector<FieldElement> reps;
  int semigroup_conductor = 0;  // Mono only
};

// Places where some generator has a pole.
PlaceSet pole_places(const FieldElement& x);

RingAnalysis analyze(const FgRingDesc& desc);

// Membership straight from the description.
bool in_ring_direct(const FgRingDesc& desc, const FieldElement& x);
// Some rep y with (x - y)/r in O_S, by valuations.
bool in_ring_cosets(const RingAnalysis& a, const FieldElement& x);
// Same through the definable-sets chain for O_S.
bool in_ring_chain(const RingAnalysis& a, const SIntegerPlan& plan, WitnessProvider& provider,
                   const FieldElement& x);

// Disjunction over reps y of the O_S formula at (x - y)/r. Universal, free variable x.
Formula build_ring_formula(const RingAnalysis& a, const SIntegerPlan& plan);

// Distinct classes of R modulo r O_S met by ring elements of bounded size; the
// count equals reps.size() when the analysis is right.
std::size_t count_quotient_classes(const FgRingDesc& desc, const RingAnalysis& a);

// Problems found when re-checking the analysis invariants on `samples`.
std::vector<std::string> check_analysis(const FgRingDesc& desc, const RingAnalysis& a,
                                        const std::vector<FieldElement>& samples);

}  // namespace univdef
