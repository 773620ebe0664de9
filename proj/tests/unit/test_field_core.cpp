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
#include <set>

#include "univdef/approximation.hpp"
#include "univdef/place.hpp"

using namespace univdef;

namespace {

const FieldDesc kQ = FieldDesc::rationals();
const FieldDesc kF2 = FieldDesc::function_field(2);
const FieldDesc kF3 = FieldDesc::function_field(3);

FieldElement q(const std::string& s) { return parse_element(kQ, s); }
FieldElement f2(const std::string& s) { return parse_element(kF2, s); }

// Brute-force irreducibility: no monic divisor of degree <= deg/2.
bool naive_irreducible(const FpPoly& f) {
  std::uint32_t p = f.prime();
  if (f.degree() <= 0) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= p;
    for (std::uint64_t i = 0; i < n; ++i) {
      FpPoly g = FpPoly::from_index(p, i) + FpPoly::monomial(p, 1, d);
      if ((f % g).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("integer factorization multiplies back") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Integer n = Integer(static_cast<unsigned long>(rng() % 1000000007ULL)) *
                    Integer(static_cast<unsigned long>(rng() % 100003ULL)) +
                1;
    Integer back = 1;
    for (auto& [p, e] : factor_integer(n)) {
      CHECK(is_prime(p));
      for (int i = 0; i < e; ++i) back *= p;
    }
    CHECK(back == n);
  }
  CHECK_THROWS(factor_integer(0));
}

TEST_CASE("polynomial factorization agrees with brute force") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<std::uint32_t> c(1 + rng() % 9);
      for (auto& x : c) x = rng() % p;
      FpPoly f(p, c);
      if (f.is_zero()) continue;
      FpPoly back = FpPoly::constant(p, f.leading());
      for (auto& [g, e] : factor_poly(f)) {
        CHECK(g.is_monic());
        CHECK(naive_irreducible(g));
        back = back * poly_pow(g, e);
      }
      CHECK(back == f);
      CHECK(is_irreducible(f) == naive_irreducible(f));
    }
  }
  // Repeated factors beyond the characteristic.
  FpPoly t1 = parse_poly(2, "T+1");
  auto fac = factor_poly(poly_pow(t1, 5) * poly_pow(parse_poly(2, "T^2+T+1"), 2));
  REQUIRE(fac.size() == 2);
  CHECK(fac[0].second == 5);
  CHECK(fac[1].second == 2);
}

TEST_CASE("valuation examples") {
  CHECK(valuation(q("50/3"), Place::prime(5)) == 2);
  CHECK(valuation(f2("(T^2+1)/T^5"), Place::degree_place(2)) == 3);
  CHECK(valuation(q("0"), Place::prime(7)) == kInfiniteValuation);
  CHECK(valuation(q("50/3"), Place::prime(3)) == -1);
}

TEST_CASE("support examples") {
  CHECK(to_string(support(q("20/3"))) == "{q:2, q:3, q:5}");
  CHECK(to_string(support(f2("T/(T+1)^2"))) == "{inf, f:T, f:T+1}");
  CHECK(support(q("1")).empty());
  CHECK_THROWS_AS(support(q("0")), std::invalid_argument);
}

TEST_CASE("reduce examples") {
  CHECK(reduce(q("7/3"), Place::prime(5)).to_string() == "4");
  CHECK(reduce(f2("T+1"), Place::parse(kF2, "f:T")).to_string() == "1");
  CHECK_THROWS_AS(reduce(q("1/5"), Place::prime(5)), std::domain_error);
}

TEST_CASE("element text round trip") {
  for (const char* s : {"-3/4", "0", "17", "1/2"}) CHECK(q(s).to_string() == s);
  FieldDesc f5 = FieldDesc::function_field(5);
  FieldElement x = parse_element(f5, "(T^3+2*T+1)/(T^2+4)");
  CHECK(parse_element(f5, x.to_string()) == x);
  CHECK(parse_element(kF2, "T^2+1/T") == f2("(T^2+1)/(T)"));
  CHECK_THROWS(parse_element(kQ, "1/0"));
  CHECK_THROWS(parse_element(kQ, "abc"));
  CHECK(FieldDesc::parse("F3(T)") == kF3);
  CHECK_THROWS(FieldDesc::parse("F4(T)"));
}

TEST_CASE("valuation is additive and ultrametric on samples") {
  std::mt19937_64 rng(3);
  for (const FieldDesc& field : {kQ, kF2, kF3}) {
    auto places = first_places(field, 6);
    for (int i = 0; i < 150; ++i) {
      FieldElement x = random_element(field, field.is_rationals() ? 60 : 4, rng);
      FieldElement y = random_element(field, field.is_rationals() ? 60 : 4, rng);
      for (const Place& v : places) {
        int vx = valuation(x, v), vy = valuation(y, v);
        if (!x.is_zero() && !y.is_zero()) CHECK(valuation(x * y, v) == vx + vy);
        CHECK(valuation(x + y, v) >= std::min(vx, vy));
      }
    }
  }
}

TEST_CASE("product formula over function fields") {
  std::mt19937_64 rng(5);
  for (const FieldDesc& field : {kF2, kF3}) {
    for (int i = 0; i < 100; ++i) {
      FieldElement x = random_element(field, 5, rng);
      if (x.is_zero()) continue;
      long total = 0;
      for (const Place& v : support(x)) total += static_cast<long>(v.degree()) * valuation(x, v);
      CHECK(total == 0);
    }
  }
}

TEST_CASE("reduction is a ring homomorphism") {
  std::mt19937_64 rng(9);
  for (const FieldDesc& field : {kQ, kF2, kF3}) {
    for (const Place& v : first_places(field, 5)) {
      ResidueField k(v);
      for (int i = 0; i < 60; ++i) {
        FieldElement x = random_element(field, field.is_rationals() ? 40 : 3, rng);
        FieldElement y = random_element(field, field.is_rationals() ? 40 : 3, rng);
        if (valuation(x, v) < 0 || valuation(y, v) < 0) continue;
        CHECK(k.reduce(x + y) == k.add(k.reduce(x), k.reduce(y)));
        CHECK(k.reduce(x * y) == k.mul(k.reduce(x), k.reduce(y)));
      }
    }
  }
}

TEST_CASE("weak approximation examples") {
  FieldElement x = weak_approximate(kQ, {{Place::prime(2), q("1"), 2}, {Place::prime(5), q("0"), 1}});
  CHECK(x == q("25"));
  CHECK(weak_approximate(kQ, {{Place::prime(3), q("7/2"), 4}}) == q("7/2"));
  Place vt = Place::parse(kF2, "f:T"), vt1 = Place::parse(kF2, "f:T+1");
  FieldElement y = weak_approximate(kF2, {{vt, f2("1"), 1}, {vt1, f2("0"), 1}});
  CHECK(valuation(y - f2("1"), vt) > 1);
  CHECK(valuation(y, vt1) > 1);
  CHECK_THROWS_AS(weak_approximate(kQ, {{Place::prime(2), q("1"), 0}, {Place::prime(2), q("0"), 0}}),
                  std::invalid_argument);
}

TEST_CASE("weak approximation satisfies random targets") {
  std::mt19937_64 rng(13);
  for (const FieldDesc& field : {kQ, kF2, kF3}) {
    auto places = first_places(field, 6);
    for (int trial = 0; trial < 80; ++trial) {
      std::vector<ApproximationTarget> targets;
      for (const Place& v : places) {
        if (rng() % 2) continue;
        targets.push_back({v, random_element(field, field.is_rationals() ? 30 : 3, rng),
                           static_cast<int>(rng() % 5) - 1});
      }
      FieldElement x = weak_approximate(field, targets);
      for (const auto& t : targets) {
        int val = valuation(x - t.value, t.place);
        CHECK((val == kInfiniteValuation || val > t.gamma));
      }
    }
  }
}

TEST_CASE("height enumeration") {
  auto h1 = enumerate_by_height(kQ, 1);
  CHECK(h1.size() == 3);
  auto f0 = enumerate_by_height(kF2, 0);
  CHECK(f0.size() == 2);
  auto h2 = enumerate_by_height(kQ, 2);
  std::set<std::string> seen;
  for (auto& x : h2) seen.insert(x.to_string());
  CHECK(seen.count("1/2"));
  CHECK(seen.count("-2"));
  CHECK(!seen.count("1/3"));
  CHECK(seen.size() == h2.size());
  // Independent count: coprime pairs (n, d) with |n|, d <= 12.
  long expected = 1;
  for (long d = 1; d <= 12; ++d)
    for (long n = 1; n <= 12; ++n)
      if (std::gcd(n, d) == 1) expected += 2;
  CHECK(enumerate_by_height(kQ, 12).size() == static_cast<std::size_t>(expected));
}

TEST_CASE("quadratic solver returns exact roots") {
  std::mt19937_64 rng(17);
  for (const FieldDesc& field : {kQ, kF2, kF3}) {
    int found = 0;
    for (int trial = 0; trial < 200; ++trial) {
      FieldElement r1 = random_element(field, field.is_rationals() ? 20 : 3, rng);
      FieldElement r2 = random_element(field, field.is_rationals() ? 20 : 3, rng);
      FieldElement A = random_element(field, field.is_rationals() ? 5 : 1, rng);
      if (A.is_zero()) continue;
      FieldElement B = -(A * (r1 + r2)), C = A * r1 * r2;
      auto roots = solve_quadratic(A, B, C);
      bool has1 = false, has2 = false;
      for (auto& r : roots) {
        CHECK((A * r * r + B * r + C).is_zero());
        has1 |= r == r1;
        has2 |= r == r2;
      }
      CHECK(has1);
      CHECK(has2);
      ++found;
    }
    CHECK(found > 100);
  }
  // X^2 + X + 1 has no root in F_2(T); X^2 - 2 none in Q.
  CHECK(solve_quadratic(f2("1"), f2("1"), f2("1")).empty());
  CHECK(solve_quadratic(q("1"), q("0"), q("-2")).empty());
}
