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

#include <random>

#include "univdef/approximation.hpp"
#include "univdef/definable.hpp"

using namespace univdef;

namespace {

const FieldDesc kQ = FieldDesc::rationals();
const FieldDesc kF2 = FieldDesc::function_field(2);

FieldElement q(const std::string& s) { return parse_element(kQ, s); }
FieldElement f2(const std::string& s) { return parse_element(kF2, s); }
QuaternionDesc Q(const std::string& s) { return QuaternionDesc::parse(kQ, s); }

}  // namespace

TEST_CASE("odd_neg examples") {
  auto r = odd_neg(q("20/3"));
  CHECK(to_string(r.odd) == "{q:3, q:5}");
  CHECK(to_string(r.neg) == "{q:3}");
  CHECK(odd_neg(q("1")).odd.empty());
  auto t = odd_neg(f2("T/(T+1)^2"));
  CHECK(to_string(t.odd) == "{inf, f:T}");
  CHECK(to_string(t.neg) == "{f:T+1}");
  CHECK_THROWS(odd_neg(q("0")));
}

TEST_CASE("sigma examples") {
  auto a = Q("AS[1/4;5]");
  CHECK(in_sigma(a, a, q("1/3"), SigmaMode::kPlain));
  CHECK_FALSE(in_sigma(a, a, q("1/2"), SigmaMode::kPlain));
  CHECK_FALSE(in_sigma(a, a, q("2/3"), SigmaMode::kUnits));
  CHECK(in_sigma(a, a, q("3/7"), SigmaMode::kUnits));
  auto b = Q("CL(3;-1)");
  CHECK(to_string(ramification_set(b)) == "{q:2, q:3}");
  CHECK(in_sigma(a, b, q("1/5"), SigmaMode::kPlain));
  CHECK_FALSE(in_sigma(a, b, q("1/2"), SigmaMode::kPlain));
  // Empty intersection: all of K.
  auto split = Q("AS[0;1]");
  for (const char* x : {"1/2", "1/5", "1/10", "0"}) CHECK(in_sigma(a, split, q(x), SigmaMode::kPlain));
  CHECK_THROWS(in_sigma(Q("CL(-1;-1)"), a, q("1"), SigmaMode::kPlain));
  CHECK_FALSE(in_sigma(a, a, q("0"), SigmaMode::kUnits));
}

TEST_CASE("S(Q) witness search") {
  auto split = Q("AS[0;1]");
  auto r = in_S_of_Q(split, q("2"));
  REQUIRE(r.member);
  CHECK(reduced_trace(split, r.witness) == q("2"));
  CHECK(reduced_norm(split, r.witness) == q("1"));
  auto a = Q("AS[1/4;5]");
  auto r3 = in_S_of_Q(a, q("3"));
  REQUIRE(r3.member);
  CHECK(reduced_norm(a, r3.witness) == q("1"));
  CHECK(reduced_trace(a, r3.witness) == q("3"));
  auto tiny = in_S_of_Q(a, q("3"), SearchBudget{1, 1});
  CHECK_FALSE(tiny.member);
}

TEST_CASE("J and H examples") {
  auto a = Q("AS[1/4;5]");
  CHECK(in_J(a, q("5"), q("5")));
  CHECK_FALSE(in_J(a, q("5"), q("3")));
  for (auto& x : enumerate_by_height(kQ, 6)) CHECK(in_J(a, q("3"), x));
  CHECK(in_H(a, q("1/5"), q("5")));
  CHECK_FALSE(in_H(a, q("1/5"), q("1")));
  CHECK_THROWS(in_J(a, q("0"), q("1")));
}

TEST_CASE("Phi, T, O_S examples") {
  PlaceSet S5 = {Place::prime(5)};
  CHECK(in_phi(S5, q("2"), q("2"), q("1")));
  CHECK(in_phi(S5, q("2"), q("7"), q("1")));
  CHECK_FALSE(in_phi(S5, q("2"), q("1"), q("5")));
  CHECK_THROWS(in_phi(S5, q("5"), q("2"), q("1")));
  SynthesisPack pack{kQ, S5, q("5"), q("2"), q("1")};
  CHECK(to_string(ramification_set(t_algebra(pack, q("2"), q("1")))) == "{q:5, q:17}");
  CHECK(in_T(pack, q("2"), q("1"), q("17")));
  CHECK_FALSE(in_T(pack, q("2"), q("1"), q("5")));
  CHECK_FALSE(in_T(pack, q("2"), q("1"), q("1/17")));
  CHECK_THROWS(in_T(pack, q("1"), q("5"), q("17")));
  CHECK(in_O_S(q("7"), {}));
  CHECK(in_O_S(q("1/2"), {Place::prime(2)}));
  CHECK_FALSE(in_O_S(q("1/2"), {}));
  CHECK(in_complement_union(q("3"), S5));
  CHECK(SynthesisPack::parse(kQ, pack.to_string()).to_string() == "pack(S={q:5};pi=5;u=2;c=1)");
}

TEST_CASE("units via (x^2+1)/x and O_S duality") {
  std::mt19937_64 rng(41);
  auto a = Q("AS[1/4;5]");
  SigmaSet sigma(a, a);
  for (int i = 0; i < 300; ++i) {
    FieldElement x = random_element(kQ, 80, rng);
    if (x.is_zero()) continue;
    FieldElement one(kQ, 1);
    CHECK(sigma.contains(x, SigmaMode::kUnits) == sigma.contains((x * x + one) / x, SigmaMode::kPlain));
    PlaceSet S = {Place::prime(2), Place::prime(5)};
    CHECK(in_O_S(x, S) == !in_complement_union(x.inverse(), S));
  }
}

TEST_CASE("J/H identity witnesses on a small range") {
  PlaceSet delta = {Place::prime(2), Place::prime(5)};
  for (const char* cs : {"5", "2/5", "3", "1/10", "50"}) {
    FieldElement c = q(cs);
    for (const FieldElement& x : enumerate_by_height(kQ, 20)) {
      auto jw = construct_j_witness(delta, c, x);
      CHECK(jw.has_value() == in_J_places(delta, c, x));
      auto hw = construct_h_witness(delta, c, x);
      CHECK(hw.has_value() == in_H_places(delta, c, x));
    }
  }
}

TEST_CASE("set expressions") {
  CHECK(SetExpr::parse(kQ, "OS[{q:5}]").contains("1/5") == Tri::kTrue);
  CHECK(SetExpr::parse(kQ, "Sigma(AS[1/4;5];AS[1/4;5])").contains("1/2") == Tri::kFalse);
  CHECK(SetExpr::parse(kQ, "J[5](AS[1/4;5])").contains("5") == Tri::kTrue);
  CHECK(SetExpr::parse(kQ, "H[1/5](AS[1/4;5])").contains("1") == Tri::kFalse);
  CHECK(SetExpr::parse(kQ, "Phi[{q:5};2]").contains("7,1") == Tri::kTrue);
  CHECK(SetExpr::parse(kQ, "T[pack(S={q:5};pi=5;u=2;c=1);2;1]").contains("17") == Tri::kTrue);
  CHECK(SetExpr::parse(kQ, "U[{q:5}]").contains("3") == Tri::kTrue);
  CHECK(SetExpr::parse(kQ, "SQ(AS[1/4;5])").contains("3") == Tri::kTrue);
  CHECK_THROWS(SetExpr::parse(kQ, "Bogus[1]"));
  CHECK_THROWS(SetExpr::parse(kQ, "Sigma(CL(-1;-1);CL(2;5))"));
}
