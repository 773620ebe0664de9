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
#include <utility>

#include "univdef/definable.hpp"
#include "univdef/eval.hpp"
#include "univdef/formula.hpp"
#include "univdef/synthesis.hpp"

namespace univdef {

// Terms for the parameters of an algebra [a, b).
struct AlgebraTerms {
  Term a, b;
  static AlgebraTerms of(const QuaternionDesc& q);  // Artin-Schreier form only
};

// exists x1 x3 x4 with Nrd(x1 + (t - 2 x1) u + x3 v + x4 uv) = 1 in [a, b). Rank 3.
Formula build_s_of_q(const Term& t, const AlgebraTerms& q);
// Sigma(q, q2) (plain), its inverse set, or its units, at num/den. The caller
// guarantees den != 0. Rank 7.
Formula build_sigma_at(SigmaMode mode, const Term& num, const Term& den, const AlgebraTerms& q,
                       const AlgebraTerms& q2);
// Free variables x, a, b, a2, b2.
Formula build_phi_sigma(SigmaMode mode);
// t in squares * Sigma([a, b))^x. Rank 8.
Formula build_square_class(const Term& t, const AlgebraTerms& q);
// J^c([a, b)) and H^c([a, b)) at x. Ranks 16 and 15.
Formula build_J(const Term& x, const AlgebraTerms& q, const Term& c);
Formula build_H(const Term& x, const AlgebraTerms& q, const Term& c);
// Free variables x, a, b, c.
Formula build_J();
Formula build_H();
// (a, b) in Phi^S_u for the pack's S, u and pi. Rank 14.
Formula build_Phi(const Term& a, const Term& b, const SynthesisPack& pack);
// The four-fold conjunction T_{a,b} at x. Rank 63.
Formula build_T(const Term& x, const Term& a, const Term& b, const SynthesisPack& pack);
// exists a, b: Phi and T, free variable x. Rank 79.
Formula build_union(const SynthesisPack& pack);
// Rank 47 in characteristic 2, 48 otherwise. Throws listing failed hypotheses.
Formula build_union_optimized(const SynthesisPack& pack);
std::vector<std::string> optimized_violations(const SynthesisPack& pack);
// x in m_v. Rank 7.
Formula build_m_v(const Term& x, const Place& v);

// Existential phi(var) to the universal definition of
// (K minus {x != 0 : 1/x satisfies phi}) plus {0}. Rank + 1.
Formula dualize(const Formula& phi, const std::string& var = "");

// Union of m_v over the places outside plan.S (free variable x).
Formula build_s_integer_union(const SIntegerPlan& plan);
// Universal definition of O_S (free variable x).
Formula build_o_s(const SIntegerPlan& plan);

// Single-equation existential formula defining the same set over `domain`.
Formula to_diophantine(const Formula& phi, const Domain& domain);

}  // namespace univdef
