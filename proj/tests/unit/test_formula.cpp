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

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "univdef/builders.hpp"

using namespace univdef;

namespace {

const FieldDesc Q = FieldDesc::rationals();

AlgebraTerms vars_ab() { return {Term::var("a"), Term::var("b")}; }

std::set<std::uint32_t> brute_s_of_q(const FiniteField& F, std::uint32_t a, std::uint32_t b) {
  std::set<std::uint32_t> out;
  std::uint32_t q = F.order();
  for (std::uint32_t x1 = 0; x1 < q; ++x1)
    for (std::uint32_t x2 = 0; x2 < q; ++x2)
      for (std::uint32_t x3 = 0; x3 < q; ++x3)
        for (std::uint32_t x4 = 0; x4 < q; ++x4) {
          std::uint32_t n = F.add(F.mul(x1, x1), F.mul(x1, x2));
          n = F.sub(n, F.mul(a, F.mul(x2, x2)));
          std::uint32_t m = F.sub(F.add(F.mul(x3, x3), F.mul(x3, x4)), F.mul(a, F.mul(x4, x4)));
          n = F.sub(n, F.mul(b, m));
          if (n == 1) out.insert(F.add(F.add(x1, x1), x2));
        }
  return out;
}

std::set<std::uint32_t> sumset(const FiniteField& F, const std::set<std::uint32_t>& A, const std::set<std::uint32_t>& B) {
  std::set<std::uint32_t> out;
  for (auto x : A)
    for (auto y : B) out.insert(F.add(x, y));
  return out;
}

std::vector<std::string> corpus() {
  std::ifstream in(UNIVDEF_TEST_DATA "/golden_formulas.txt");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("rank ledger of the builders") {
  CHECK(rank(build_s_of_q(Term::var("t"), vars_ab())) == 3);
  for (auto m : {SigmaMode::kPlain, SigmaMode::kInverse, SigmaMode::kUnits}) CHECK(rank(build_phi_sigma(m)) == 7);
  CHECK(rank(build_square_class(Term::var("t"), vars_ab())) == 8);
  CHECK(rank(build_J()) == 16);
  CHECK(rank(build_H()) == 15);
  auto pack = SynthesisPack::parse(Q, "pack(S={q:5};pi=5;u=2;c=1)");
  CHECK(rank(build_Phi(Term::var("a"), Term::var("b"), pack)) == 14);
  CHECK(rank(build_T(Term::var("x"), Term::var("a"), Term::var("b"), pack)) == 63);
  Formula u = build_union(pack);
  CHECK(rank(u) == 79);
  CHECK(u.free_variables() == std::set<std::string>{"x"});
  CHECK(rank(dualize(u)) == 80);
  CHECK(polarity(dualize(u)) == Polarity::kUniversal);
  auto mv = build_m_v(Term::var("x"), Place::prime(7));
  CHECK(rank(mv) == 7);
  CHECK(rank(dualize(mv)) == 8);
}

TEST_CASE("optimized unions") {
  auto pq = SynthesisPack::parse(Q, "pack(S={q:2, q:3, q:5};pi=30;u=7;c=1)");
  Formula oq = build_union_optimized(pq);
  CHECK(rank(oq) == 48);
  CHECK(rank(dualize(oq)) == 49);
  FieldDesc F2 = FieldDesc::function_field(2);
  auto plan = plan_s_integers(F2, parse_place_set(F2, "{f:T}"), true);
  Formula o2 = build_union_optimized(plan.pack);
  CHECK(rank(o2) == 47);
  CHECK(rank(dualize(o2)) == 48);
  auto bad = SynthesisPack::parse(Q, "pack(S={q:5};pi=5;u=2;c=1)");
  CHECK_THROWS_WITH_AS(build_union_optimized(bad), doctest::Contains("q:2"), std::invalid_argument);
  CHECK(optimized_violations(pq).empty());
}

TEST_CASE("combine rank arithmetic") {
  Formula e3 = parse_formula("exists y. exists w. exists v. x = y*y + w*w + v*v");
  Formula e4 = parse_formula("exists y. exists w. exists v. exists u. x = y*y + w*w + v*v + u*u");
  CHECK(rank(combine(e3, e4, Connective::kAnd)) == 7);
  CHECK(rank(combine(e3, e4, Connective::kOr)) == 4);
  Formula u2 = parse_formula("forall y. forall w. ~x = y*w");
  Formula u1 = parse_formula("forall y. ~x*y = 1");
  CHECK(rank(combine(u2, u1, Connective::kOr)) == 3);
  CHECK(rank(combine(u2, u1, Connective::kAnd)) == 2);
  CHECK_THROWS_AS(combine(e3, u1, Connective::kAnd), std::invalid_argument);
  Formula c = combine(e3, e3, Connective::kAnd);
  CHECK(bound_variables(c).size() == 6);
  CHECK(rank(parse_formula("x = 0")) == 0);
  CHECK_THROWS_AS(rank(parse_formula("exists y. forall w. x = y*w")), std::invalid_argument);
}

TEST_CASE("sigma formulas over finite fields match trace sums") {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    FiniteField F(q);
    struct P {
      std::uint32_t a, b, a2, b2;
    };
    std::vector<P> params = {{0, 1, 0, 1}, {1, 2, 0, 1}, {2, 1, 1, 2}};
    for (const P& p : params) {
      // (1 + 4a) b (1 + 4a') b' != 0
      auto ok = [&](std::uint32_t a, std::uint32_t b) { return b != 0 && F.add(1, F.mul(4 % F.characteristic(), a)) != 0; };
      if (!ok(p.a, p.b) || !ok(p.a2, p.b2)) continue;
      auto sigma = sumset(F, brute_s_of_q(F, p.a, p.b), brute_s_of_q(F, p.a2, p.b2));
      for (auto mode : {SigmaMode::kPlain, SigmaMode::kInverse, SigmaMode::kUnits}) {
        FiniteEvaluator ev(build_phi_sigma(mode), F, {"x", "a", "b", "a2", "b2"});
        for (std::uint32_t x = 0; x < q; ++x) {
          bool want = false;
          if (mode == SigmaMode::kPlain) want = sigma.count(x) > 0;
          if (mode == SigmaMode::kInverse) want = x != 0 && sigma.count(F.inv(x));
          if (mode == SigmaMode::kUnits) want = x != 0 && sigma.count(x) && sigma.count(F.inv(x));
          CHECK(ev({x, p.a, p.b, p.a2, p.b2}) == want);
        }
      }
    }
  }
}

TEST_CASE("units sigma rejects zero") {
  FiniteField F(5);
  CHECK_FALSE(eval_finite(build_phi_sigma(SigmaMode::kUnits), F, {{"x", 0}, {"a", 0}, {"b", 1}, {"a2", 0}, {"b2", 1}}));
}

TEST_CASE("J and H over small fields match the set constructions") {
  for (std::uint32_t q : {3u, 5u}) {
    FiniteField F(q);
    auto sigma = sumset(F, brute_s_of_q(F, 0, 1), brute_s_of_q(F, 0, 1));
    std::set<std::uint32_t> units;
    for (std::uint32_t x = 1; x < q; ++x)
      if (sigma.count(x) && sigma.count(F.inv(x))) units.insert(x);
    auto square_class = [&](std::uint32_t t) {
      if (t == 0) return true;
      for (std::uint32_t r = 1; r < q; ++r)
        if (units.count(F.mul(t, F.mul(r, r)))) return true;
      return false;
    };
    FiniteEvaluator ej(build_J(), F, {"x", "a", "b", "c"});
    FiniteEvaluator eh(build_H(), F, {"x", "a", "b", "c"});
    for (std::uint32_t c = 0; c < q; ++c) {
      for (std::uint32_t x = 0; x < q; ++x) {
        bool j = false;
        for (std::uint32_t y = 0; y < q; ++y) {
          std::uint32_t cy2 = F.mul(c, F.mul(y, y));
          if (cy2 == 0) continue;
          j |= sigma.count(F.mul(x, F.inv(cy2))) && square_class(F.sub(1, cy2));
        }
        bool h = x == 0;
        if (F.mul(c, x) != 0) {
          for (std::uint32_t y = 0; y < q; ++y) {
            std::uint32_t t = F.sub(1, F.mul(x, y));
            h |= sigma.count(F.mul(c, y)) && t != 0 && sigma.count(F.mul(F.mul(c, x), F.inv(t)));
          }
        }
        CHECK(ej({x, 0, 1, c}) == j);
        CHECK(eh({x, 0, 1, c}) == h);
      }
    }
  }
}

TEST_CASE("dualize") {
  Formula units = parse_formula("exists y. x*y = 1");
  Formula d = dualize(units);
  CHECK(rank(d) == 2);
  CHECK(polarity(d) == Polarity::kUniversal);
  FiniteField F(3);
  for (std::uint32_t x = 0; x < 3; ++x) CHECK(eval_finite(d, F, {{"x", x}}) == (x == 0));
  CHECK_THROWS_AS(dualize(parse_formula("forall y. x = y")), std::invalid_argument);
  CHECK_THROWS_AS(dualize(parse_formula("exists y. x*y = z")), std::invalid_argument);
  CHECK(rank(dualize(parse_formula("exists y. x*y = z"), "x")) == 2);
}

TEST_CASE("to_diophantine examples") {
  Formula h = to_diophantine(parse_formula("x = 0 & y = 0"), Domain::of(Q));
  CHECK(rank(h) == 0);
  CHECK(to_string(h) == "x*x + x*y + y*y = 0");
  Formula n = to_diophantine(parse_formula("~x = 0"), Domain::of(Q));
  CHECK(rank(n) == 1);
  CHECK(to_string(n) == "exists y. x*y = 1");
  Formula t = to_diophantine(parse_formula("x = 0 & y = 0"), Domain::of(FieldDesc::function_field(2)));
  CHECK(to_string(t) == "x*x + [T]*(y*y) = 0");
  CHECK_THROWS_AS(to_diophantine(parse_formula("forall y. x = y"), Domain::of(Q)), std::invalid_argument);
}

namespace {

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    if (rng() % 2) return Term::var(vars[rng() % vars.size()]);
    return Term::integer(static_cast<long>(rng() % 4));
  }
  Term a = random_term(rng, vars, depth - 1), b = random_term(rng, vars, depth - 1);
  switch (rng() % 3) {
    case 0:
      return a + b;
    case 1:
      return a - b;
    default:
      return a * b;
  }
}

Formula random_qf(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    Formula at = Formula::eq(random_term(rng, vars, 2), random_term(rng, vars, 2));
    return rng() % 3 == 0 ? Formula::negation(at) : at;
  }
  Formula a = random_qf(rng, vars, depth - 1), b = random_qf(rng, vars, depth - 1);
  return rng() % 2 ? Formula::conj({a, b}) : Formula::disj({a, b});
}

}  // namespace

TEST_CASE("to_diophantine preserves semantics on random rank-2 formulas over F_5") {
  std::mt19937_64 rng(2024);
  FiniteField F(5);
  for (int it = 0; it < 40; ++it) {
    Formula body = random_qf(rng, {"x", "y", "w"}, 3);
    Formula f = Formula::exists(std::vector<std::string>{"y", "w"}, body);
    REQUIRE(rank(f) == 2);
    Formula d = to_diophantine(f, Domain::of(F));
    CHECK(rank(d) <= 3);
    Formula m = d;
    while (m.is_quantifier()) m = m.body();
    CHECK(m.kind() == Formula::Kind::kEq);
    CHECK(truth_table(f, F, {"x"}) == truth_table(d, F, {"x"}));
  }
}

TEST_CASE("finite and global evaluation") {
  FiniteField F5(5);
  Formula sq = parse_formula("exists y. y*y = x");
  CHECK(eval_finite(sq, F5, {{"x", 4}}));
  CHECK_FALSE(eval_finite(sq, F5, {{"x", 2}}));
  auto g = eval_global(parse_formula("exists y. y*y = 2"), Q, {});
  CHECK(g.value == Tri::kUnknown);
  for (int budget : {10, 1000, 100000}) {
    GlobalBudget b;
    b.nodes = budget;
    CHECK(eval_global(parse_formula("exists y. y*y = 2"), Q, {}, b).value == Tri::kUnknown);
  }
  auto t = eval_global(sq, Q, {{"x", parse_element(Q, "9/4")}});
  CHECK(t.value == Tri::kTrue);
  CHECK(t.witness.at("y") * t.witness.at("y") == parse_element(Q, "9/4"));
  auto u = eval_global(parse_formula("forall y. ~y*y = x"), Q, {{"x", parse_element(Q, "4")}});
  CHECK(u.value == Tri::kFalse);
  CHECK(eval_global(parse_formula("x*x = 4"), Q, {{"x", parse_element(Q, "-2")}}).value == Tri::kTrue);
  CHECK(eval_global(parse_formula("x*x = 4"), Q, {{"x", parse_element(Q, "3")}}).value == Tri::kFalse);
  CHECK_THROWS_AS(eval_global(sq, Q, {}), std::invalid_argument);
  FiniteField F9(9);
  CHECK(F9.characteristic() == 3);
  auto table = truth_table(sq, F9, {"x"});
  CHECK(std::count(table.begin(), table.end(), true) == 5);
  CHECK(table[0]);
  CHECK(table[1]);
  CHECK(table[2]);  // -1 is a square in GF(9)
}

TEST_CASE("parser and printer") {
  Formula f = parse_formula("exists y. x*y = 1");
  CHECK(rank(f) == 1);
  CHECK(to_string(f) == "exists y. x*y = 1");
  CHECK(alpha_equivalent(f, parse_formula("exists w. x*w = 1")));
  CHECK_FALSE(alpha_equivalent(f, parse_formula("exists x. x*x = 1")));
  for (const char* bad : {"exists . x = 1", "x = ", "x + = 1", "(x = 1", "x = 1 &", "[1/0] = x", "exists exists. x = 1"}) {
    CHECK_THROWS_AS(parse_formula(bad), ParseError);
  }
  try {
    parse_formula("x = 1 & ");
  } catch (const ParseError& e) {
    CHECK(e.position == 8);
  }
  Formula lit = parse_formula("x = [T^2+1]", FieldDesc::function_field(3));
  CHECK(to_string(lit) == "x = [T^2+1]");
  CHECK(to_string(parse_formula("x = -(y + 1)*2 - -3")) == "x = -(y + 1)*2 - -3");
  auto pack = SynthesisPack::parse(Q, "pack(S={q:5};pi=5;u=2;c=1)");
  Formula u = build_union(pack);
  Formula back = parse_formula(to_string(u));
  CHECK(alpha_equivalent(u, back));
  CHECK(to_string(back) == to_string(u));
}

TEST_CASE("golden corpus round trips") {
  auto lines = corpus();
  CHECK(lines.size() >= 30);
  for (const std::string& s : lines) {
    Formula f = parse_formula(s);
    CHECK(to_string(f) == s);
    CHECK(alpha_equivalent(parse_formula(to_string(f)), f));
    CHECK(alpha_equivalent(normalize_bound_names(f), f));
    CHECK(rank(normalize_bound_names(f)) == rank(f));
  }
}

TEST_CASE("substitution avoids capture") {
  Formula f = parse_formula("exists y. x = y*y");
  Formula g = substitute(f, "x", Term::var("y") + Term::integer(1));
  CHECK(g.free_variables() == std::set<std::string>{"y"});
  FiniteField F5(5);
  for (std::uint32_t y = 0; y < 5; ++y) {
    CHECK(eval_finite(g, F5, {{"y", y}}) == eval_finite(f, F5, {{"x", F5.add(y, 1)}}));
  }
  Formula h = substitute_fraction(parse_formula("x*x = 2*x + 1"), "x", Term::var("n"), Term::var("d"));
  CHECK(to_string(h) == "n*n = (2*n + d)*d");
}
