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

#include <array>
#include <cstddef>
#include <string>

#include "univdef/place.hpp"

namespace univdef {

class QuaternionDesc {
 public:
  enum class Form { kArtinSchreier, kClassical };

  // [a, b): u^2 - u = a, v^2 = b, uv + vu = v. Needs b(1+4a) != 0.
  static QuaternionDesc artin_schreier(const FieldElement& a, const FieldElement& b);
  // (a, b): i^2 = a, j^2 = b, ij = -ji. Needs ab != 0, characteristic != 2.
  static QuaternionDesc classical(const FieldElement& a, const FieldElement& b);
  // "AS[a;b]" or "CL(a;b)".
  static QuaternionDesc parse(const FieldDesc& field, const std::string& text);

  Form form() const { return form_; }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  FieldDesc field() const { return a_.field(); }
  std::string to_string() const;

 private:
  QuaternionDesc(Form form, FieldElement a, FieldElement b)
      : form_(form), a_(std::move(a)), b_(std::move(b)) {}
  Form form_;
  FieldElement a_, b_;
};

struct PureQuaternionPoint {
  std::array<FieldElement, 4> x;
};

QuaternionDesc classicalize(const QuaternionDesc& q);
FieldElement reduced_norm(const QuaternionDesc& q, const PureQuaternionPoint& x);
FieldElement reduced_trace(const QuaternionDesc& q, const PureQuaternionPoint& x);

// Hilbert symbol (alpha, beta)_v in characteristic != 2, as +1 / -1.
int hilbert_symbol(const FieldElement& alpha, const FieldElement& beta, const Place& v);

// Characteristic 2: a + (c^2 - c) with pole order at v either odd or nonpositive.
FieldElement artin_schreier_reduce(const FieldElement& a, const Place& v);
// Characteristic 2: trace to F_2 of the residue of a * db / b at v.
int artin_schreier_symbol(const FieldElement& a, const FieldElement& b, const Place& v);
// Trace to F_p of Res_v(f dT).
std::uint32_t residue_trace(const FieldElement& f, const Place& v);

bool local_splits(const QuaternionDesc& q, const Place& v);
PlaceSet ramification_set(const QuaternionDesc& q);
bool is_nonreal(const QuaternionDesc& q);

enum class OracleVerdict { kSplit, kNonsplit, kInconclusive };
std::string to_string(OracleVerdict v);

// Independent brute-force test: search for a primitive zero of the norm form
// x^2 + xy - a y^2 - b z^2 (or x^2 - a y^2 - b z^2) digit by digit.
OracleVerdict local_split_oracle(const QuaternionDesc& q, const Place& v, int precision,
                                 std::size_t node_budget = 200000);
// 2|v(a_reduced)| + |v(b)| + 5.
int certified_precision(const QuaternionDesc& q, const Place& v);

}  // namespace univdef
