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
#include "univdef/fg_ring.hpp"

#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>

#include "univdef/builders.hpp"
#include "univdef/definable.hpp"

namespace univdef {

namespace {

constexpr std::size_t kMaxReps = 4096;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::regex item(R"(\s*(\d+)\s*)");
  std::string body = text;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string piece = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::smatch m;
    if (!std::regex_match(piece, m, item)) throw std::invalid_argument("bad semigroup generator '" + piece + "'");
    out.push_back(std::stoi(m[1]));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

FieldElement fe_poly(std::uint32_t p, const std::vector<std::uint32_t>& c) {
  return FieldElement::polynomial(FpPoly(p, c));
}

}  // namespace

FgRingDesc FgRingDesc::parse(const std::string& text) {
  std::smatch m;
  FgRingDesc d;
  static const std::regex zinv(R"(\s*Zinv:(\d+)\s*)");
  static const std::regex fpt(R"(\s*FpT:(\d+)\s*)");
  static const std::regex mono(R"(\s*Mono:(\d+):\{([^}]*)\}\s*)");
  if (std::regex_match(text, m, zinv)) {
    d.kind = Kind::kLocalizedIntegers;
    d.n = Integer(m[1].str());
    if (d.n < 1) throw std::invalid_argument("Zinv needs n >= 1");
    return d;
  }
  auto read_p = [](const std::string& s) {
    Integer p(s);
    if (!is_prime(p) || p > 65521) throw std::invalid_argument("not a supported prime: " + s);
    return static_cast<std::uint32_t>(p.get_ui());
  };
  if (std::regex_match(text, m, fpt)) {
    d.kind = Kind::kPolynomial;
    d.p = read_p(m[1]);
    return d;
  }
  if (std::regex_match(text, m, mono)) {
    d.kind = Kind::kMonomial;
    d.p = read_p(m[1]);
    std::set<int> g;
    for (int k : parse_int_list(m[2])) {
      if (k > 0) g.insert(k);
    }
    d.gens.assign(g.begin(), g.end());
    int gcd = 0;
    for (int k : d.gens) gcd = std::gcd(gcd, k);
    if (gcd != 1) {
      throw std::invalid_argument("semigroup generators must be coprime (gcd " + std::to_string(gcd) + ")");
    }
    if (d.gens.front() > 64) throw std::invalid_argument("semigroup generators too large");
    return d;
  }
  throw std::invalid_argument("unrecognized ring descriptor '" + text + "' (use Zinv:n, FpT:p, Mono:p:{k,...})");
}

std::string FgRingDesc::to_string() const {
  switch (kind) {
    case Kind::kLocalizedIntegers:
      return "Zinv:" + n.get_str();
    case Kind::kPolynomial:
      return "FpT:" + std::to_string(p);
    case Kind::kMonomial: {
      std::string s = "Mono:" + std::to_string(p) + ":{";
      for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + std::to_string(gens[i]);
      return s + "}";
    }
  }
  return "";
}

FieldDesc FgRingDesc::field() const {
  return kind == Kind::kLocalizedIntegers ? FieldDesc::rationals() : FieldDesc::function_field(p);
}

std::vector<FieldElement> FgRingDesc::generators() const {
  std::vector<FieldElement> out;
  switch (kind) {
    case Kind::kLocalizedIntegers:
      out.push_back(FieldElement::fraction(Integer(1), n));
      break;
    case Kind::kPolynomial:
      out.push_back(FieldElement::generator(field()));
      break;
    case Kind::kMonomial:
      for (int k : gens) out.push_back(FieldElement::polynomial(FpPoly::monomial(p, 1, k)));
      break;
  }
  return out;
}

bool FgRingDesc::in_semigroup(int k) const {
  if (k < 0) return false;
  std::vector<bool> reach(k + 1, false);
  reach[0] = true;
  for (int i = 1; i <= k; ++i) {
    for (int g : gens) {
      if (g <= i && reach[i - g]) {
        reach[i] = true;
        break;
      }
    }
  }
  return reach[k];
}

PlaceSet pole_places(const FieldElement& x) {
  PlaceSet out;
  if (x.is_zero()) return out;
  if (x.is_rational()) {
    Integer den = x.rational().den;
    if (den != 1) {
      for (auto& [q, e] : factor_integer(den)) out.insert(Place::prime(q));
    }
    return out;
  }
  const auto& rf = x.rational_function();
  if (rf.num.degree() > rf.den.degree()) out.insert(Place::degree_place(rf.num.prime()));
  if (!rf.den.is_constant()) {
    for (auto& [P, e] : factor_poly(rf.den)) out.insert(Place::irreducible(P));
  }
  return out;
}

RingAnalysis analyze(const FgRingDesc& desc) {
  RingAnalysis a;
  for (const FieldElement& g : desc.generators()) {
    PlaceSet s = pole_places(g);
    a.S.insert(s.begin(), s.end());
  }
  FieldDesc K = desc.field();
  a.conductor = FieldElement(K, 1);
  a.reps = {FieldElement(K, 0)};
  if (desc.kind != FgRingDesc::Kind::kMonomial) return a;

  int c = 0;
  // Frobenius bound: every k >= (g1 - 1)(g2 - 1) for coprime g1, g2; scan far enough.
  int limit = desc.gens.front() * desc.gens.back() + desc.gens.back();
  for (int k = limit; k >= 0; --k) {
    if (!desc.in_semigroup(k)) {
      c = k + 1;
      break;
    }
  }
  a.semigroup_conductor = c;
  a.conductor = FieldElement::polynomial(FpPoly::monomial(desc.p, 1, c));
  std::vector<int> small;
  for (int k = 0; k < c; ++k) {
    if (desc.in_semigroup(k)) small.push_back(k);
  }
  std::size_t count = 1;
  for (std::size_t i = 0; i < small.size(); ++i) {
    count *= desc.p;
    if (count > kMaxReps) throw std::invalid_argument("too many coset representatives for " + desc.to_string());
  }
  a.reps.clear();
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> coeffs(c, 0);
    std::size_t r = idx;
    for (int k : small) {
      coeffs[k] = r % desc.p;
      r /= desc.p;
    }
    a.reps.push_back(fe_poly(desc.p, coeffs));
  }
  return a;
}

bool in_ring_direct(const FgRingDesc& desc, const FieldElement& x) {
  switch (desc.kind) {
    case FgRingDesc::Kind::kLocalizedIntegers: {
      Integer d = x.rational().den;
      for (;;) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), desc.n.get_mpz_t());
        if (g == 1) break;
        d /= g;
      }
      return d == 1;
    }
    case FgRingDesc::Kind::kPolynomial:
      return x.is_integral();
    case FgRingDesc::Kind::kMonomial: {
      if (!x.is_integral()) return false;
      const FpPoly& f = x.rational_function().num;
      for (int k = 0; k <= f.degree(); ++k) {
        if (f.coeff(k) != 0 && !desc.in_semigroup(k)) return false;
      }
      return true;
    }
  }
  return false;
}

bool in_ring_cosets(const RingAnalysis& a, const FieldElement& x) {
  for (const FieldElement& y : a.reps) {
    if (in_O_S((x - y) / a.conductor, a.S)) return true;
  }
  return false;
}

bool in_ring_chain(const RingAnalysis& a, const SIntegerPlan& plan, WitnessProvider& provider,
                   const FieldElement& x) {
  for (const FieldElement& y : a.reps) {
    if (chain_o_s_member(plan, provider, (x - y) / a.conductor)) return true;
  }
  return false;
}

Formula build_ring_formula(const RingAnalysis& a, const SIntegerPlan& plan) {
  Formula os = build_o_s(plan);
  Term x = Term::var("x");
  Term r = Term::constant(a.conductor);
  std::vector<Formula> parts;
  for (const FieldElement& y : a.reps) {
    Term num = y.is_zero() ? x : x - Term::constant(y);
    parts.push_back(a.conductor.is_one() ? substitute(os, "x", num) : substitute_fraction(os, "x", num, r));
  }
  return normalize_bound_names(combine_all(parts, Connective::kOr));
}

std::size_t count_quotient_classes(const FgRingDesc& desc, const RingAnalysis& a) {
  if (desc.kind != FgRingDesc::Kind::kMonomial) {
    // r = 1: R = O_S, one class.
    return 1;
  }
  // All semigroup-supported polynomials of degree < c + max gen, reduced mod T^c.
  int c = a.semigroup_conductor;
  int top = c + desc.gens.back();
  std::vector<int> support;
  for (int k = 0; k < top; ++k) {
    if (desc.in_semigroup(k)) support.push_back(k);
  }
  std::set<std::vector<std::uint32_t>> classes;
  std::size_t total = 1;
  for (std::size_t i = 0; i < support.size() && total <= (1u << 20); ++i) total *= desc.p;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint32_t> low(c, 0);
    std::size_t r = idx;
    for (int k : support) {
      std::uint32_t v = r % desc.p;
      r /= desc.p;
      if (k < c) low[k] = v;
    }
    classes.insert(low);
  }
  return classes.size();
}

std::vector<std::string> check_analysis(const FgRingDesc& desc, const RingAnalysis& a,
                                        const std::vector<FieldElement>& samples) {
  std::vector<std::string> out;
  if (a.conductor.is_zero()) out.push_back("conductor is zero");
  for (std::size_t i = 0; i < a.reps.size(); ++i) {
    if (!in_ring_direct(desc, a.reps[i])) out.push_back("rep " + a.reps[i].to_string() + " not in R");
    for (std::size_t j = 0; j < i; ++j) {
      if (in_O_S((a.reps[i] - a.reps[j]) / a.conductor, a.S)) {
        out.push_back("reps " + a.reps[j].to_string() + " and " + a.reps[i].to_string() + " are congruent");
      }
    }
  }
  for (const FieldElement& g : desc.generators()) {
    if (!in_O_S(g, a.S)) out.push_back("generator " + g.to_string() + " not in O_S");
  }
  for (const FieldElement& x : samples) {
    if (in_O_S(x, a.S) && !in_ring_direct(desc, a.conductor * x)) {
      out.push_back("r*x not in R for x = " + x.to_string());
    }
    if (in_ring_direct(desc, x) != in_ring_cosets(a, x)) out.push_back("coset membership differs at " + x.to_string());
  }
  return out;
}

}  // namespace univdef
