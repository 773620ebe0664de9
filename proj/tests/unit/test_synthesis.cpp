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
#include "univdef/synthesis.hpp"

using namespace univdef;

namespace {
const FieldDesc Q = FieldDesc::rationals();
const FieldDesc F2 = FieldDesc::function_field(2);
const FieldDesc F3 = FieldDesc::function_field(3);
PlaceSet ps(const FieldDesc& f, const char* s) { return parse_place_set(f, s); }
FieldElement el(const FieldDesc& f, const char* s) { return parse_element(f, s); }
}  // namespace

TEST_CASE("find_pi examples") {
  CHECK(find_pi(Q, ps(Q, "{q:5}")) == el(Q, "5"));
  CHECK(find_pi(Q, ps(Q, "{q:2, q:5}")) == el(Q, "30"));
  CHECK(find_pi(Q, {}) == el(Q, "2"));
}

TEST_CASE("find_pi postcondition on random sets") {
  std::mt19937_64 rng(11);
  for (const FieldDesc& f : {Q, F2, F3}) {
    auto places = first_places(f, 8);
    for (int it = 0; it < 25; ++it) {
      PlaceSet S;
      for (const Place& v : places) {
        if (rng() % 3 == 0) S.insert(v);
      }
      FieldElement pi = find_pi(f, S);
      PlaceSet odd = odd_neg(pi).odd;
      CHECK(odd.size() % 2 == 1);
      for (const Place& v : S) CHECK(odd.count(v) == 1);
    }
  }
}

TEST_CASE("find_u examples and residue hypothesis") {
  CHECK(find_u(Q, ps(Q, "{q:5}")) == el(Q, "2"));
  CHECK(find_u(Q, ps(Q, "{q:2, q:5}")) == el(Q, "7"));
  CHECK(find_u(F2, ps(F2, "{f:T}")) == el(F2, "1"));
  CHECK_THROWS_AS(find_u(Q, {}), std::invalid_argument);
  for (const FieldDesc& f : {Q, F2, F3}) {
    PlaceSet S;
    for (const Place& v : first_places(f, 5)) S.insert(v);
    FieldElement u = find_u(f, S);
    for (const Place& v : S) {
      ResidueField k(v);
      CHECK(valuation(u, v) == 0);
      CHECK(k.artin_schreier_irreducible(k.mul(k.reduce(u), k.reduce(u))));
    }
  }
}

TEST_CASE("find_c examples") {
  CHECK(find_c(Q, ps(Q, "{q:5}"), el(Q, "5")) == el(Q, "1"));
  FieldElement c = find_c(Q, ps(Q, "{q:2, q:5}"), el(Q, "30"));
  CHECK(c == el(Q, "3"));
  CHECK_THROWS_AS(find_c(Q, ps(Q, "{q:7}"), el(Q, "5")), std::invalid_argument);
  // With pi = T the place at infinity is odd too, so c = 1 is not admissible.
  FieldElement c2 = find_c(F2, ps(F2, "{f:T}"), el(F2, "T"));
  CHECK(valuation(c2, Place::parse(F2, "f:T")) == 0);
  CHECK(valuation(c2, Place::parse(F2, "inf")) == 1);
}

TEST_CASE("pack validation") {
  auto good = SynthesisPack::parse(Q, "pack(S={q:5};pi=5;u=2;c=1)");
  CHECK(pack_violations(good).empty());
  CHECK_NOTHROW(validate_pack(good));
  auto bad_u = SynthesisPack::parse(Q, "pack(S={q:5};pi=5;u=1;c=1)");
  CHECK_FALSE(pack_violations(bad_u).empty());
  CHECK_THROWS_AS(validate_pack(bad_u), std::invalid_argument);
  auto even = SynthesisPack::parse(Q, "pack(S={q:2, q:5};pi=10;u=7;c=1)");
  CHECK_FALSE(pack_violations(even).empty());
  auto f2 = SynthesisPack::parse(F2, "pack(S={f:T};pi=T;u=1;c=1)");
  auto v = pack_violations(f2);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("inf") != std::string::npos);
  for (const FieldDesc& f : {Q, F2, F3}) {
    for (int n : {1, 3}) {
      PlaceSet S;
      for (const Place& p : first_places(f, n)) S.insert(p);
      CHECK(pack_violations(synthesize_pack(f, S)).empty());
    }
  }
}

TEST_CASE("find_ab examples") {
  auto pack = SynthesisPack::parse(Q, "pack(S={q:5};pi=5;u=2;c=1)");
  auto ab = find_ab(pack, Place::prime(17));
  CHECK(ab.first == el(Q, "7"));
  CHECK(ab.second == el(Q, "17"));
  CHECK_THROWS_AS(find_ab(pack, Place::prime(5)), std::invalid_argument);
  auto f2 = SynthesisPack::parse(F2, "pack(S={f:T};pi=T;u=1;c=1)");
  auto ab2 = find_ab(f2, Place::parse(F2, "f:T+1"));
  CHECK(ramification_set(t_algebra(f2, ab2.first, ab2.second)) == ps(F2, "{f:T, f:T+1}"));
  CHECK(in_phi(f2.S, f2.u, ab2.first, ab2.second));
}

TEST_CASE("find_ab postcondition across places") {
  for (const FieldDesc& f : {Q, F2, F3}) {
    PlaceSet S;
    for (const Place& v : first_places(f, 1)) S.insert(v);
    SynthesisPack pack = synthesize_pack(f, S);
    int done = 0;
    for (const Place& w : first_places(f, 14)) {
      if (S.count(w)) continue;
      auto [a, b] = find_ab(pack, w);
      PlaceSet want = S;
      want.insert(w);
      CHECK(in_phi(pack.S, pack.u, a, b));
      CHECK(ramification_set(t_algebra(pack, a, b)) == want);
      ++done;
    }
    CHECK(done >= 12);
  }
}

TEST_CASE("witness_for examples") {
  auto pack = SynthesisPack::parse(Q, "pack(S={q:5};pi=5;u=2;c=1)");
  auto w17 = witness_for(el(Q, "17"), pack);
  REQUIRE(w17);
  CHECK(w17->first == el(Q, "7"));
  CHECK(w17->second == el(Q, "17"));
  CHECK_FALSE(witness_for(el(Q, "1/3"), pack));
  auto w3 = witness_for(el(Q, "3"), pack);
  REQUIRE(w3);
  CHECK(in_T(pack, w3->first, w3->second, el(Q, "3")));
  auto w0 = witness_for(el(Q, "0"), pack);
  REQUIRE(w0);
}

TEST_CASE("witness provider agrees with the valuation test") {
  std::mt19937_64 rng(5);
  for (const FieldDesc& f : {Q, F3}) {
    SynthesisPack pack = synthesize_pack(f, {first_places(f, 1)[0]});
    WitnessProvider provider(pack);
    for (int i = 0; i < 60; ++i) {
      FieldElement x = random_element(f, 4, rng);
      auto w = provider.witness_for(x);
      CHECK(w.has_value() == in_complement_union(x, pack.S));
      if (w) CHECK(provider.in_T(w->first, w->second, x));
    }
  }
}

TEST_CASE("find_algebra prescribed ramification") {
  for (const FieldDesc& f : {Q, F2, F3}) {
    auto places = first_places(f, 5);
    for (std::size_t i = 0; i < places.size(); ++i) {
      for (std::size_t j = i + 1; j < places.size(); ++j) {
        PlaceSet T = {places[i], places[j]};
        QuaternionDesc q = find_algebra(f, T);
        CHECK(ramification_set(q) == T);
      }
    }
    CHECK(ramification_set(find_algebra(f, {})).empty());
    CHECK_THROWS_AS(find_algebra(f, {places[0]}), std::invalid_argument);
    auto [q1, q2] = find_algebra_pair(f, {places[2]});
    PlaceSet meet;
    for (const Place& v : ramification_set(q1)) {
      if (ramification_set(q2).count(v)) meet.insert(v);
    }
    CHECK(meet == PlaceSet{places[2]});
  }
}

TEST_CASE("S-integer plans") {
  auto plan = plan_s_integers(Q, ps(Q, "{q:2, q:3}"), false);
  CHECK(plan.pack.S.size() % 2 == 1);
  CHECK(plan.extra.size() == 1);
  auto empty = plan_s_integers(Q, {}, false);
  CHECK(empty.pack.S.size() == 1);
  auto opt = plan_s_integers(Q, ps(Q, "{q:3}"), true);
  CHECK(opt.pack.S.count(Place::prime(2)) == 1);
  CHECK(opt.pack.S == odd_neg(opt.pack.pi).odd);
  WitnessProvider provider(plan.pack);
  for (const char* x : {"1/2", "1/3", "5/6", "0", "7"}) CHECK(chain_o_s_member(plan, provider, el(Q, x)));
  for (const char* x : {"1/5", "2/35", "1/7"}) CHECK_FALSE(chain_o_s_member(plan, provider, el(Q, x)));
  CHECK_THROWS(plan_s_integers(Q, ps(F2, "{f:T}"), false));
}
