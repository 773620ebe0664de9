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
#include "univdef/builders.hpp"

#include <algorithm>
#include <functional>

namespace univdef {
namespace {

const char* kSlot = "%x";

Term lit(const FieldElement& v) {
  if (v.is_rational() && v.rational().den == 1 && v.rational().num.fits_slong_p()) {
    return Term::integer(v.rational().num.get_si());
  }
  return Term::constant(v);
}

bool is_one(const Term& t) {
  return t.kind() == Term::Kind::kConst && t.value().is_one();
}

std::set<std::string> vars_of(std::initializer_list<Term> ts) {
  std::set<std::string> out;
  for (const Term& t : ts) out.insert(t.variables().begin(), t.variables().end());
  return out;
}

std::string pick(const std::string& base, std::set<std::string>& avoid) {
  std::string v = fresh_name(base, avoid);
  avoid.insert(v);
  return v;
}

Formula with_slot(const Formula& body, const Term& num, const Term& den) {
  if (is_one(den)) return substitute(body, kSlot, num);
  return substitute_fraction(body, kSlot, num, den);
}

}  // namespace

AlgebraTerms AlgebraTerms::of(const QuaternionDesc& q) {
  if (q.form() != QuaternionDesc::Form::kArtinSchreier) {
    throw std::invalid_argument("AlgebraTerms: expected an Artin-Schreier descriptor");
  }
  return {lit(q.a()), lit(q.b())};
}

Formula build_s_of_q(const Term& t, const AlgebraTerms& q) {
  std::set<std::string> avoid = vars_of({t, q.a, q.b});
  Term x1 = Term::var(pick("x1", avoid));
  Term x3 = Term::var(pick("x3", avoid));
  Term x4 = Term::var(pick("x4", avoid));
  Term x2 = t - Term::integer(2) * x1;
  Term norm = x1 * x1 + x1 * x2 - q.a * x2 * x2 - q.b * (x3 * x3 + x3 * x4 - q.a * x4 * x4);
  return Formula::exists(std::vector<std::string>{x1.name(), x3.name(), x4.name()}, Formula::eq(norm, Term::integer(1)));
}

namespace {

// Plain Sigma at the placeholder slot.
Formula sigma_slot(const AlgebraTerms& q, const AlgebraTerms& q2) {
  Term x = Term::var(kSlot);
  std::set<std::string> avoid = vars_of({q.a, q.b, q2.a, q2.b});
  avoid.insert(kSlot);
  std::string y = pick("y", avoid);
  Term ty = Term::var(y);
  Formula body = combine(build_s_of_q(ty, q), build_s_of_q(x - ty, q2), Connective::kAnd);
  return Formula::exists(y, body);
}

}  // namespace

Formula build_sigma_at(SigmaMode mode, const Term& num, const Term& den, const AlgebraTerms& q,
                       const AlgebraTerms& q2) {
  Formula base = sigma_slot(q, q2);
  switch (mode) {
    case SigmaMode::kPlain:
      return with_slot(base, num, den);
    case SigmaMode::kInverse:
      return Formula::conj({Formula::neq(num, Term::integer(0)), with_slot(base, den, num)});
    case SigmaMode::kUnits: {
      Term n2 = is_one(den) ? num * num + Term::integer(1) : num * num + den * den;
      Term d2 = is_one(den) ? num : num * den;
      return Formula::conj({Formula::neq(num, Term::integer(0)), substitute_fraction(base, kSlot, n2, d2)});
    }
  }
  return base;
}

Formula build_phi_sigma(SigmaMode mode) {
  AlgebraTerms q{Term::var("a"), Term::var("b")};
  AlgebraTerms q2{Term::var("a2"), Term::var("b2")};
  return build_sigma_at(mode, Term::var("x"), Term::integer(1), q, q2);
}

Formula build_square_class(const Term& t, const AlgebraTerms& q) {
  std::set<std::string> avoid = vars_of({t, q.a, q.b});
  Term qv = Term::var(pick("q", avoid));
  Formula inner = Formula::disj({build_sigma_at(SigmaMode::kUnits, t * qv * qv, Term::integer(1), q, q),
                                 Formula::eq(t, Term::integer(0))});
  return Formula::exists(qv.name(), Formula::conj({Formula::neq(qv, Term::integer(0)), inner}));
}

Formula build_J(const Term& x, const AlgebraTerms& q, const Term& c) {
  std::set<std::string> avoid = vars_of({x, q.a, q.b, c});
  Term y = Term::var(pick("y", avoid));
  Term cy2 = c * y * y;
  Formula body = combine_all({Formula::neq(cy2, Term::integer(0)), build_sigma_at(SigmaMode::kPlain, x, cy2, q, q),
                              build_square_class(Term::integer(1) - cy2, q)},
                             Connective::kAnd);
  return Formula::exists(y.name(), body);
}

Formula build_H(const Term& x, const AlgebraTerms& q, const Term& c) {
  std::set<std::string> avoid = vars_of({x, q.a, q.b, c});
  Term y = Term::var(pick("y", avoid));
  Formula body = combine(build_sigma_at(SigmaMode::kPlain, c * y, Term::integer(1), q, q),
                         build_sigma_at(SigmaMode::kInverse, Term::integer(1) - x * y, c * x, q, q), Connective::kAnd);
  Formula nonzero = Formula::conj({Formula::neq(c * x, Term::integer(0)), Formula::exists(y.name(), body)});
  return Formula::disj({Formula::eq(x, Term::integer(0)), nonzero});
}

Formula build_J() {
  return build_J(Term::var("x"), {Term::var("a"), Term::var("b")}, Term::var("c"));
}

Formula build_H() {
  return build_H(Term::var("x"), {Term::var("a"), Term::var("b")}, Term::var("c"));
}

Formula build_Phi(const Term& a, const Term& b, const SynthesisPack& pack) {
  auto [q1, q2] = find_algebra_pair(pack.field, pack.S);
  AlgebraTerms t1 = AlgebraTerms::of(q1), t2 = AlgebraTerms::of(q2);
  return combine(build_sigma_at(SigmaMode::kUnits, b, Term::integer(1), t1, t2),
                 build_sigma_at(SigmaMode::kPlain, a - lit(pack.u), lit(pack.pi), t1, t2), Connective::kAnd);
}

namespace {

AlgebraTerms t_algebra_terms(const Term& a, const Term& b, const SynthesisPack& pack) {
  return {a * a, b * lit(pack.pi)};
}

Formula union_of(const SynthesisPack& pack, const std::function<Formula(const Term&, const Term&, const Term&)>& t_part) {
  Term x = Term::var("x");
  Term a = Term::var("a"), b = Term::var("b");
  Formula body = combine(build_Phi(a, b, pack), t_part(x, a, b), Connective::kAnd);
  return Formula::exists(std::vector<std::string>{"a", "b"}, body);
}

}  // namespace

Formula build_T(const Term& x, const Term& a, const Term& b, const SynthesisPack& pack) {
  AlgebraTerms q = t_algebra_terms(a, b, pack);
  return combine_all({build_J(x, q, Term::integer(1) + Term::integer(4) * a * a), build_J(x, q, b),
                      build_J(x, q, lit(pack.c)), build_H(x, q, a)},
                     Connective::kAnd);
}

Formula build_union(const SynthesisPack& pack) {
  validate_pack(pack);
  return union_of(pack, [&](const Term& x, const Term& a, const Term& b) { return build_T(x, a, b, pack); });
}

std::vector<std::string> optimized_violations(const SynthesisPack& pack) {
  std::vector<std::string> out = pack_violations(pack);
  if (!out.empty()) return out;
  PlaceSet odd = odd_neg(pack.pi).odd;
  if (odd != pack.S) out.push_back("S != Odd(pi): Odd(pi) = " + to_string(odd));
  if (pack.field.is_rationals() && !pack.S.count(Place::prime(2))) {
    out.push_back("S must contain the places of residue characteristic 2 (q:2)");
  }
  return out;
}

Formula build_union_optimized(const SynthesisPack& pack) {
  auto v = optimized_violations(pack);
  if (!v.empty()) {
    std::string msg = "optimized union preconditions fail for " + pack.to_string() + ":";
    for (auto& s : v) msg += " [" + s + "]";
    throw std::invalid_argument(msg);
  }
  bool char2 = !pack.field.is_rationals() && pack.field.characteristic() == 2;
  return union_of(pack, [&](const Term& x, const Term& a, const Term& b) {
    AlgebraTerms q = t_algebra_terms(a, b, pack);
    if (char2) return combine(build_J(x, q, b), build_H(x, q, a), Connective::kAnd);
    return combine(build_J(x, q, Term::integer(1) + Term::integer(4) * a * a), build_J(x, q, b), Connective::kAnd);
  });
}

Formula build_m_v(const Term& x, const Place& v) {
  auto [q1, q2] = find_algebra_pair(v.field(), {v});
  return build_sigma_at(SigmaMode::kPlain, x, lit(v.uniformizer()), AlgebraTerms::of(q1), AlgebraTerms::of(q2));
}

Formula dualize(const Formula& phi, const std::string& var) {
  Polarity p = polarity(phi);
  if (p == Polarity::kUniversal || p == Polarity::kMixed) {
    throw std::invalid_argument("dualize: expected an existential formula, got " + to_string(p));
  }
  std::string x = var;
  if (x.empty()) {
    if (phi.free_variables().size() != 1) {
      throw std::invalid_argument("dualize: name the distinguished variable (formula has " +
                                  std::to_string(phi.free_variables().size()) + " free variables)");
    }
    x = *phi.free_variables().begin();
  }
  std::set<std::string> avoid = all_variables(phi);
  avoid.insert(x);
  std::string y = fresh_name("y", avoid);
  Term tx = Term::var(x), ty = Term::var(y);
  Formula at_y = substitute(phi, x, ty);
  Formula inner = Formula::forall(
      y, Formula::disj({Formula::neq(tx * ty, Term::integer(1)), Formula::negation(at_y)}));
  return Formula::disj({Formula::eq(tx, Term::integer(0)), inner});
}

Formula build_s_integer_union(const SIntegerPlan& plan) {
  std::vector<Formula> parts = {plan.optimized ? build_union_optimized(plan.pack) : build_union(plan.pack)};
  for (const Place& v : plan.extra) parts.push_back(build_m_v(Term::var("x"), v));
  return normalize_bound_names(combine_all(parts, Connective::kOr));
}

Formula build_o_s(const SIntegerPlan& plan) {
  return normalize_bound_names(dualize(build_s_integer_union(plan), "x"));
}

// ---------------------------------------------------------------- diophantine form

namespace {

struct Prenex {
  std::vector<std::string> vars;
  Formula matrix;
};

// Existential prenex form with variables shared across disjuncts, so the
// number of quantifiers equals the rank.
Prenex prenex(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::kEq:
      return {{}, positive ? f : Formula::negation(f)};
    case Formula::Kind::kNot:
      return prenex(f.body(), !positive);
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      Prenex p = prenex(f.body(), positive);
      p.vars.insert(p.vars.begin(), f.var());
      return p;
    }
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      bool is_and = (f.kind() == Formula::Kind::kAnd) == positive;
      Prenex acc{{}, Formula::conj({})};
      std::vector<Formula> mats;
      for (const Formula& c : f.children()) {
        Prenex p = prenex(c, positive);
        if (is_and) {
          acc.vars.insert(acc.vars.end(), p.vars.begin(), p.vars.end());
        } else {
          Formula m = p.matrix;
          for (std::size_t i = 0; i < p.vars.size(); ++i) {
            if (i < acc.vars.size()) {
              m = substitute(m, p.vars[i], Term::var(acc.vars[i]));
            } else {
              acc.vars.push_back(p.vars[i]);
            }
          }
          p.matrix = m;
        }
        mats.push_back(p.matrix);
      }
      acc.matrix = is_and ? Formula::conj(mats) : Formula::disj(mats);
      return acc;
    }
  }
  return {{}, f};
}

struct DClause {
  std::vector<Term> eqs, neqs;
};

Term difference(const Formula& atom) {
  auto is_zero = [](const Term& t) { return t.kind() == Term::Kind::kConst && t.value().is_zero(); };
  if (is_zero(atom.rhs())) return atom.lhs();
  if (is_zero(atom.lhs())) return atom.rhs();
  return atom.lhs() - atom.rhs();
}

std::vector<DClause> dnf(const Formula& m, std::size_t cap) {
  switch (m.kind()) {
    case Formula::Kind::kEq:
      return {{{difference(m)}, {}}};
    case Formula::Kind::kNot:
      if (m.body().kind() != Formula::Kind::kEq) throw std::logic_error("dnf: matrix not in negation normal form");
      return {{{}, {difference(m.body())}}};
    case Formula::Kind::kOr: {
      std::vector<DClause> out;
      for (const Formula& c : m.children()) {
        auto part = dnf(c, cap);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > cap) throw std::runtime_error("to_diophantine: too many disjuncts");
      }
      return out;
    }
    case Formula::Kind::kAnd: {
      std::vector<DClause> acc = {{}};
      for (const Formula& c : m.children()) {
        auto part = dnf(c, cap);
        std::vector<DClause> next;
        for (const DClause& a : acc) {
          for (const DClause& b : part) {
            DClause d = a;
            d.eqs.insert(d.eqs.end(), b.eqs.begin(), b.eqs.end());
            d.neqs.insert(d.neqs.end(), b.neqs.begin(), b.neqs.end());
            next.push_back(std::move(d));
            if (next.size() > cap) throw std::runtime_error("to_diophantine: too many disjuncts");
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw std::logic_error("dnf: quantifier inside matrix");
  }
}

// Homogenized root-free form, coefficients low to high.
struct Homogenizer {
  std::vector<Term> coeffs;

  Term operator()(const Term& x, const Term& y) const {
    int d = static_cast<int>(coeffs.size()) - 1;
    std::optional<Term> sum;
    for (int i = d; i >= 0; --i) {
      const Term& c = coeffs[i];
      if (c.kind() == Term::Kind::kConst && c.value().is_zero()) continue;
      Term mono = i > 0 ? pow(x, i) : Term::integer(1);
      if (d - i > 0) mono = i > 0 ? mono * pow(y, d - i) : pow(y, d - i);
      Term term = c.kind() == Term::Kind::kConst && c.value().is_one() ? mono : c * mono;
      sum = sum ? *sum + term : term;
    }
    return *sum;
  }
};

Homogenizer homogenizer_for(const Domain& domain) {
  Homogenizer h;
  if (domain.kind == Domain::Kind::kFinite) {
    for (long c : root_free_polynomial(*domain.finite)) h.coeffs.push_back(Term::integer(c));
  } else if (domain.field.is_rationals()) {
    h.coeffs = {Term::integer(1), Term::integer(1), Term::integer(1)};
  } else {
    FieldElement t = FieldElement::generator(domain.field);
    h.coeffs = {Term::constant(-t), Term::integer(0), Term::integer(1)};
  }
  return h;
}

Term merge_all(std::vector<Term> polys, const Homogenizer& h) {
  while (polys.size() > 1) {
    std::vector<Term> next;
    for (std::size_t i = 0; i + 1 < polys.size(); i += 2) next.push_back(h(polys[i], polys[i + 1]));
    if (polys.size() % 2) next.push_back(polys.back());
    polys = std::move(next);
  }
  return polys[0];
}

}  // namespace

Formula to_diophantine(const Formula& phi, const Domain& domain) {
  Polarity p = polarity(phi);
  if (p == Polarity::kUniversal || p == Polarity::kMixed) {
    throw std::invalid_argument("to_diophantine: expected an existential formula, got " + to_string(p));
  }
  Formula g = normalize_bound_names(phi, "v");
  Prenex pre = prenex(g, true);
  std::vector<DClause> clauses = dnf(pre.matrix, 1 << 16);
  Homogenizer h = homogenizer_for(domain);
  std::set<std::string> avoid = all_variables(g);
  std::string y = fresh_name("y", avoid);
  bool uses_y = false;
  // Trivially true clause: the whole formula holds everywhere.
  for (const DClause& c : clauses) {
    if (c.eqs.empty() && c.neqs.empty()) return Formula::eq(Term::integer(0), Term::integer(0));
  }
  if (clauses.size() == 1 && clauses[0].neqs.empty() && clauses[0].eqs.size() == 1 &&
      pre.matrix.kind() == Formula::Kind::kEq) {
    return Formula::exists(pre.vars, pre.matrix);
  }
  std::vector<Term> per_clause;
  std::optional<Formula> single;
  for (const DClause& c : clauses) {
    std::vector<Term> eqs = c.eqs;
    if (!c.neqs.empty()) {
      uses_y = true;
      Term prod = c.neqs[0];
      for (std::size_t i = 1; i < c.neqs.size(); ++i) prod = prod * c.neqs[i];
      if (clauses.size() == 1 && eqs.empty()) {
        single = Formula::eq(prod * Term::var(y), Term::integer(1));
        break;
      }
      eqs.push_back(prod * Term::var(y) - Term::integer(1));
    }
    per_clause.push_back(merge_all(eqs, h));
  }
  std::vector<std::string> vars = pre.vars;
  if (uses_y) vars.push_back(y);
  if (single) return Formula::exists(vars, *single);
  Term prod = per_clause[0];
  for (std::size_t i = 1; i < per_clause.size(); ++i) prod = prod * per_clause[i];
  return Formula::exists(vars, Formula::eq(prod, Term::integer(0)));
}

}  // namespace univdef
