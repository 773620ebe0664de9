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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "univdef/pack.hpp"
#include "univdef/quaternion.hpp"
#include "univdef/tri.hpp"

namespace univdef {

struct OddNeg {
  PlaceSet odd, neg;
};
OddNeg odd_neg(const FieldElement& c);

enum class SigmaMode { kPlain, kInverse, kUnits };

// Intersection of the O_v over the given places; empty set means all of K.
bool in_ring(const FieldElement& x, const PlaceSet& places, SigmaMode mode);

// Sigma(q, q') via its valuation characterization.
class SigmaSet {
 public:
  SigmaSet(const QuaternionDesc& q, const QuaternionDesc& q2);
  const PlaceSet& places() const { return places_; }
  bool contains(const FieldElement& x, SigmaMode mode = SigmaMode::kPlain) const {
    return in_ring(x, places_, mode);
  }

 private:
  PlaceSet places_;
};

bool in_sigma(const QuaternionDesc& q, const QuaternionDesc& q2, const FieldElement& x, SigmaMode mode);

struct SearchBudget {
  int height = 200;
  std::size_t candidates = 1000000;
};

struct SOfQResult {
  bool member = false;
  PureQuaternionPoint witness;
  std::size_t candidates_tried = 0;
};

// Bounded search for a non-central x with Nrd(x) = 1 and Trd(x) = t.
SOfQResult in_S_of_Q(const QuaternionDesc& q, const FieldElement& t, const SearchBudget& budget = {});

bool in_J(const QuaternionDesc& q, const FieldElement& c, const FieldElement& x);
bool in_H(const QuaternionDesc& q, const FieldElement& c, const FieldElement& x);
// Same tests against a precomputed ramification set.
bool in_J_places(const PlaceSet& delta, const FieldElement& c, const FieldElement& x);
bool in_H_places(const PlaceSet& delta, const FieldElement& c, const FieldElement& x);

bool in_phi(const PlaceSet& S, const FieldElement& u, const FieldElement& a, const FieldElement& b);
// Requires (a, b) in Phi for the pack.
bool in_T(const SynthesisPack& pack, const FieldElement& a, const FieldElement& b, const FieldElement& x);
// The algebra [a^2, b pi) behind T_{a,b}.
QuaternionDesc t_algebra(const SynthesisPack& pack, const FieldElement& a, const FieldElement& b);
bool in_T_places(const PlaceSet& delta, const SynthesisPack& pack, const FieldElement& a,
                 const FieldElement& b, const FieldElement& x);

bool in_O_S(const FieldElement& x, const PlaceSet& S);
bool in_complement_union(const FieldElement& x, const PlaceSet& S);

// Explicit witnesses for the two set identities behind J and H, with R the
// intersection of O_v over `delta`.
struct JWitness {
  FieldElement y, q;  // x/(c y^2) in R and (1 - c y^2) q^2 in R^x
};
std::optional<JWitness> construct_j_witness(const PlaceSet& delta, const FieldElement& c,
                                            const FieldElement& x);
bool j_witness_valid(const PlaceSet& delta, const FieldElement& c, const FieldElement& x,
                     const FieldElement& y);
std::optional<FieldElement> construct_h_witness(const PlaceSet& delta, const FieldElement& c,
                                                const FieldElement& x);
bool h_witness_valid(const PlaceSet& delta, const FieldElement& c, const FieldElement& x,
                     const FieldElement& y);

// Parsed set expression; see README for the grammar.
class SetExpr {
 public:
  static SetExpr parse(const FieldDesc& field, const std::string& text);
  // x is a field element, or "a,b" for Phi.
  Tri contains(const std::string& x_text) const;
  const std::string& kind() const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace univdef
