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
#include "univdef/quaternion.hpp"

using namespace univdef;

namespace {

const FieldDesc kQ = FieldDesc::rationals();
const FieldDesc kF2 = FieldDesc::function_field(2);
const FieldDesc kF3 = FieldDesc::function_field(3);

FieldElement el(const FieldDesc& f, const std::string& s) { return parse_element(f, s); }

QuaternionDesc random_nonzero_desc(const FieldDesc& field, std::mt19937_64& rng, int H) {
  while (true) {
    FieldElement a = random_element(field, H, rng), b = random_element(field, H, rng);
    FieldElement one(field, 1), four(field, 4);
    if (b.is_zero() || (one + four * a).is_zero()) continue;
    return QuaternionDesc::artin_schreier(a, b);
  }
}

}  // namespace

TEST_CASE("descriptor validation and text") {
  auto q = QuaternionDesc::parse(kQ, "AS[1/4;5]");
  CHECK(q.to_string() == "AS[1/4;5]");
  CHECK(QuaternionDesc::parse(kQ, "CL(2;5)").to_string() == "CL(2;5)");
  CHECK_THROWS(QuaternionDesc::parse(kQ, "AS[-1/4;5]"));
  CHECK_THROWS(QuaternionDesc::parse(kQ, "CL(0;5)"));
  CHECK_THROWS(QuaternionDesc::parse(kF2, "CL(1;T)"));
  CHECK_THROWS(QuaternionDesc::parse(kQ, "XX(1;2)"));
}

TEST_CASE("classicalize examples") {
  CHECK(classicalize(QuaternionDesc::parse(kQ, "AS[1/4;5]")).to_string() == "CL(2;5)");
  auto q0 = QuaternionDesc::parse(kQ, "AS[0;7]");
  CHECK(classicalize(q0).to_string() == "CL(1;7)");
  CHECK(ramification_set(classicalize(q0)).empty());
  CHECK_THROWS_AS(classicalize(QuaternionDesc::parse(kF2, "AS[1;T]")), std::domain_error);
}

TEST_CASE("reduced norm and trace examples") {
  FieldElement z(kQ, 0), o(kQ, 1);
  auto q = QuaternionDesc::parse(kQ, "AS[3;7]");
  CHECK(reduced_norm(q, {{o, z, z, z}}) == o);
  CHECK(reduced_trace(q, {{o, z, z, z}}) == FieldElement(kQ, 2));
  auto q11 = QuaternionDesc::parse(kQ, "AS[1;1]");
  CHECK(reduced_norm(q11, {{z, o, z, z}}) == FieldElement(kQ, -1));
  CHECK(reduced_trace(q11, {{z, o, z, z}}) == o);
  auto c = QuaternionDesc::parse(kQ, "CL(3;7)");
  CHECK(reduced_norm(c, {{z, z, o, z}}) == FieldElement(kQ, -7));
  CHECK(reduced_trace(c, {{z, z, o, z}}) == z);
}

TEST_CASE("local splitting examples") {
  CHECK_FALSE(local_splits(QuaternionDesc::parse(kQ, "AS[1/4;5]"), Place::prime(5)));
  CHECK_FALSE(local_splits(QuaternionDesc::parse(kF2, "AS[1;T]"), Place::parse(kF2, "f:T")));
  // v(a) > 0, v(b) = 0 in characteristic 2.
  auto q = QuaternionDesc::parse(kF2, "AS[T;T+1]");
  CHECK(local_splits(q, Place::parse(kF2, "f:T")));
}

TEST_CASE("ramification set examples") {
  CHECK(to_string(ramification_set(QuaternionDesc::parse(kQ, "CL(2;5)"))) == "{q:2, q:5}");
  CHECK(ramification_set(QuaternionDesc::parse(kQ, "AS[0;11]")).empty());
  CHECK(to_string(ramification_set(QuaternionDesc::parse(kF2, "AS[1;T]"))) == "{inf, f:T}");
  CHECK(to_string(ramification_set(QuaternionDesc::parse(kQ, "CL(-1;-1)"))) == "{q:2}");
  // Hilbert symbol worked instance: (197, 85).
  CHECK(to_string(ramification_set(QuaternionDesc::parse(kQ, "CL(197;85)"))) == "{q:5, q:17}");
}

TEST_CASE("nonreality") {
  CHECK(is_nonreal(QuaternionDesc::parse(kQ, "CL(2;5)")));
  CHECK_FALSE(is_nonreal(QuaternionDesc::parse(kQ, "CL(-1;-1)")));
  CHECK(is_nonreal(QuaternionDesc::parse(kF2, "AS[1;T]")));
}

TEST_CASE("oracle examples") {
  auto q = QuaternionDesc::parse(kF2, "AS[1;T]");
  CHECK(local_split_oracle(q, Place::parse(kF2, "f:T"), 8) == OracleVerdict::kNonsplit);
  for (const Place& v : first_places(kQ, 4)) {
    CHECK(local_split_oracle(QuaternionDesc::parse(kQ, "AS[0;3]"), v, 1) == OracleVerdict::kSplit);
  }
  // Wild ramification at T with pole order 5 needs depth.
  auto wild = QuaternionDesc::parse(kF2, "AS[1/T^5;T+1]");
  Place vt = Place::parse(kF2, "f:T");
  CHECK(local_split_oracle(wild, vt, 1) == OracleVerdict::kInconclusive);
  CHECK(local_split_oracle(wild, vt, certified_precision(wild, vt)) == OracleVerdict::kNonsplit);
  CHECK_FALSE(local_splits(wild, vt));
}

TEST_CASE("Hilbert symbol against classical table") {
  // Independent reference: (a, b)_p for odd p with a, b small, using Euler's criterion.
  auto legendre = [](long a, long p) {
    a %= p;
    if (a < 0) a += p;
    long r = 1, base = a, e = (p - 1) / 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r == 1 ? 1 : -1;
  };
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    for (long a = -12; a <= 12; ++a) {
      for (long b = -12; b <= 12; ++b) {
        if (a == 0 || b == 0 || a % p == 0 || b % p == 0) continue;
        // Units: symbol is 1. a p-unit, b = p*b: symbol is (a/p).
        CHECK(hilbert_symbol(FieldElement(kQ, a), FieldElement(kQ, b), Place::prime(p)) == 1);
        CHECK(hilbert_symbol(FieldElement(kQ, a), FieldElement(kQ, b * p), Place::prime(p)) ==
              legendre(a, p));
      }
    }
  }
}

TEST_CASE("reciprocity parity on random descriptors") {
  std::mt19937_64 rng(21);
  for (const FieldDesc& field : {kQ, kF2, kF3}) {
    int checked = 0;
    while (checked < 60) {
      auto q = random_nonzero_desc(field, rng, field.is_rationals() ? 40 : 4);
      if (!is_nonreal(q)) continue;
      CHECK(ramification_set(q).size() % 2 == 0);
      ++checked;
    }
  }
}

TEST_CASE("classicalize preserves local behaviour") {
  std::mt19937_64 rng(23);
  for (const FieldDesc& field : {kQ, kF3}) {
    for (int i = 0; i < 40; ++i) {
      auto q = random_nonzero_desc(field, rng, field.is_rationals() ? 30 : 3);
      if (q.a().is_zero()) continue;
      auto c = classicalize(q);
      for (const Place& v : first_places(field, 6)) CHECK(local_splits(q, v) == local_splits(c, v));
    }
  }
}

TEST_CASE("characteristic 2: residue symbol agrees with the case analysis") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 150; ++i) {
    auto q = random_nonzero_desc(kF2, rng, 4);
    for (const Place& v : first_places(kF2, 6)) {
      FieldElement a = artin_schreier_reduce(q.a(), v);
      int va = valuation(a, v);
      CHECK((va >= 0 || (-va) % 2 == 1));
      // Reduction changes a by an element of the form c^2 - c.
      bool split_by_symbol = artin_schreier_symbol(q.a(), q.b(), v) == 0;
      CHECK(split_by_symbol == local_splits(q, v));
    }
  }
}

TEST_CASE("local tests agree with the oracle") {
  std::mt19937_64 rng(31);
  for (const FieldDesc& field : {kQ, kF2, kF3}) {
    int conclusive = 0;
    for (int i = 0; i < 40; ++i) {
      auto q = random_nonzero_desc(field, rng, field.is_rationals() ? 30 : 3);
      for (const Place& v : first_places(field, 4)) {
        auto verdict = local_split_oracle(q, v, certified_precision(q, v));
        if (verdict == OracleVerdict::kInconclusive) continue;
        ++conclusive;
        CHECK(local_splits(q, v) == (verdict == OracleVerdict::kSplit));
      }
    }
    CHECK(conclusive > 100);
  }
}
