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

#include "univdef/approximation.hpp"
#include "univdef/eval.hpp"
#include "univdef/fg_ring.hpp"

using namespace univdef;

namespace {

std::vector<FieldElement> polys_up_to(std::uint32_t p, int deg) {
  std::vector<FieldElement> out;
  std::uint64_t n = 1;
  for (int i = 0; i <= deg; ++i) n *= p;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(FieldElement::polynomial(FpPoly::from_index(p, i)));
  return out;
}

}  // namespace

TEST_CASE("descriptor parsing") {
  CHECK(FgRingDesc::parse("Zinv:6").to_string() == "Zinv:6");
  CHECK(FgRingDesc::parse("FpT:2").to_string() == "FpT:2");
  CHECK(FgRingDesc::parse("Mono:2:{3, 2}").to_string() == "Mono:2:{2,3}");
  CHECK_THROWS_AS(FgRingDesc::parse("Mono:2:{2,4}"), std::invalid_argument);
  CHECK_THROWS_AS(FgRingDesc::parse("Zinv:0"), std::invalid_argument);
  CHECK_THROWS_AS(FgRingDesc::parse("FpT:4"), std::invalid_argument);
  CHECK_THROWS_AS(FgRingDesc::parse("Z[i]"), std::invalid_argument);
  auto m = FgRingDesc::parse("Mono:5:{4,7}");
  CHECK(m.in_semigroup(0));
  CHECK(m.in_semigroup(11));
  CHECK_FALSE(m.in_semigroup(13));
  CHECK(m.in_semigroup(18));
}

TEST_CASE("analysis examples") {
  FieldDesc Q = FieldDesc::rationals();
  FieldDesc F2 = FieldDesc::function_field(2);
  auto z6 = analyze(FgRingDesc::parse("Zinv:6"));
  CHECK(to_string(z6.S) == "{q:2, q:3}");
  CHECK(z6.conductor.is_one());
  CHECK(z6.reps.size() == 1);
  CHECK(z6.reps[0].is_zero());

  auto d = FgRingDesc::parse("Mono:2:{2,3}");
  auto m = analyze(d);
  CHECK(to_string(m.S) == "{inf}");
  CHECK(m.conductor == parse_element(F2, "T^2"));
  REQUIRE(m.reps.size() == 2);
  CHECK(m.reps[0].is_zero());
  CHECK(m.reps[1].is_one());
  CHECK(count_quotient_classes(d, m) == 2);

  auto z = analyze(FgRingDesc::parse("Zinv:1"));
  CHECK(z.S.empty());
  CHECK(z.conductor.is_one());

  auto m2 = FgRingDesc::parse("Mono:3:{3,5}");
  auto a2 = analyze(m2);
  CHECK(a2.semigroup_conductor == 8);
  CHECK(a2.reps.size() == 81);
  CHECK(count_quotient_classes(m2, a2) == 81);
  CHECK(check_analysis(m2, a2, polys_up_to(3, 5)).empty());
  (void)Q;
}

TEST_CASE("Z[1/6] membership three ways") {
  auto d = FgRingDesc::parse("Zinv:6");
  auto a = analyze(d);
  auto plan = plan_s_integers(d.field(), a.S, false);
  WitnessProvider wp(plan.pack);
  auto xs = enumerate_by_height(d.field(), 50);
  CHECK(check_analysis(d, a, xs).empty());
  for (const FieldElement& x : xs) {
    bool direct = in_ring_direct(d, x);
    CHECK(direct == in_ring_cosets(a, x));
    CHECK(direct == in_ring_chain(a, plan, wp, x));
  }
  Formula f = build_ring_formula(a, plan);
  CHECK(polarity(f) == Polarity::kUniversal);
  CHECK(rank(f) == 80);
  CHECK(f.free_variables() == std::set<std::string>{"x"});
}

TEST_CASE("F2[T^2, T^3] membership three ways") {
  auto d = FgRingDesc::parse("Mono:2:{2,3}");
  auto a = analyze(d);
  auto plan = plan_s_integers(d.field(), a.S, false);
  WitnessProvider wp(plan.pack);
  auto xs = polys_up_to(2, 6);
  auto more = enumerate_by_height(d.field(), 3);
  xs.insert(xs.end(), more.begin(), more.end());
  CHECK(check_analysis(d, a, xs).empty());
  for (const FieldElement& x : xs) {
    bool direct = in_ring_direct(d, x);
    if (x.is_integral()) CHECK(direct == (x.rational_function().num.coeff(1) == 0));
    CHECK(direct == in_ring_cosets(a, x));
    CHECK(direct == in_ring_chain(a, plan, wp, x));
  }
  FieldElement T = FieldElement::generator(d.field());
  CHECK_FALSE(in_ring_chain(a, plan, wp, T));
  Formula f = build_ring_formula(a, plan);
  CHECK(rank(f) == 160);
  CHECK(polarity(f) == Polarity::kUniversal);
}

TEST_CASE("ring formula at a refutable point") {
  // 1/3 lies in Z[1/6], so no counterexample may be reported.
  auto d = FgRingDesc::parse("Zinv:6");
  auto a = analyze(d);
  auto plan = plan_s_integers(d.field(), a.S, false);
  Formula f = build_ring_formula(a, plan);
  GlobalBudget b;
  b.nodes = 2000;
  auto r = eval_global(f, d.field(), {{"x", parse_element(d.field(), "1/3")}}, b);
  CHECK(r.value != Tri::kFalse);
}
