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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "univdef/definable.hpp"

namespace univdef {

// Hypotheses of the pack that fail, as readable strings; empty when valid.
std::vector<std::string> pack_violations(const SynthesisPack& pack);
void validate_pack(const SynthesisPack& pack);

FieldElement find_pi(const FieldDesc& field, const PlaceSet& S);
FieldElement find_u(const FieldDesc& field, const PlaceSet& S);
FieldElement find_c(const FieldDesc& field, const PlaceSet& S, const FieldElement& pi);
// Pack for an odd nonempty S from the three searches above.
SynthesisPack synthesize_pack(const FieldDesc& field, const PlaceSet& S);

struct FindAbOptions {
  std::size_t pool_places = 25;
  int max_factors = 3;
};

// (a, b) in Phi with ramification_set([a^2, b pi)) = S + {w}.
std::pair<FieldElement, FieldElement> find_ab(const SynthesisPack& pack, const Place& w,
                                              const FindAbOptions& options = {});

// A descriptor [d, b) ramified exactly at T (|T| even).
QuaternionDesc find_algebra(const FieldDesc& field, const PlaceSet& T);
// Two algebras whose ramification sets meet exactly in S (S nonempty).
std::pair<QuaternionDesc, QuaternionDesc> find_algebra_pair(const FieldDesc& field, const PlaceSet& S);

std::optional<std::pair<FieldElement, FieldElement>> witness_for(const FieldElement& x,
                                                                 const SynthesisPack& pack);

// witness_for with memoized find_ab results and ramification sets.
class WitnessProvider {
 public:
  explicit WitnessProvider(SynthesisPack pack);
  const SynthesisPack& pack() const { return pack_; }
  std::optional<std::pair<FieldElement, FieldElement>> witness_for(const FieldElement& x);
  std::pair<FieldElement, FieldElement> find_ab(const Place& w);
  bool in_T(const FieldElement& a, const FieldElement& b, const FieldElement& x);
  const PlaceSet& delta(const FieldElement& a, const FieldElement& b);

 private:
  SynthesisPack pack_;
  std::map<Place, std::pair<FieldElement, FieldElement>> ab_cache_;
  std::map<std::string, PlaceSet> delta_cache_;
};

// Parameters for the union of m_v over V \ S.
struct SIntegerPlan {
  FieldDesc field;
  PlaceSet S;             // requested
  SynthesisPack pack;     // pack.S is odd and contains S
  std::vector<Place> extra;  // pack.S \ S, each covered by its own m_v disjunct
  bool optimized = false;
};

SIntegerPlan plan_s_integers(const FieldDesc& field, const PlaceSet& S, bool optimized);

// Semantic membership in the union of m_v (v outside S) following the plan's
// construction: pack witnesses, then the extra places.
bool chain_union_member(const SIntegerPlan& plan, WitnessProvider& provider, const FieldElement& x);
bool chain_o_s_member(const SIntegerPlan& plan, WitnessProvider& provider, const FieldElement& x);

}  // namespace univdef
