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
#include "univdef/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

namespace univdef {

struct Term::Node {
  Kind kind;
  FieldElement value;
  std::string name;
  Term lhs, rhs;
  std::shared_ptr<const std::set<std::string>> vars;
};

namespace {

using VarSet = std::shared_ptr<const std::set<std::string>>;

const VarSet& empty_vars() {
  static const VarSet e = std::make_shared<const std::set<std::string>>();
  return e;
}

VarSet merge_vars(const VarSet& a, const VarSet& b) {
  if (b->empty() || a == b) return a;
  if (a->empty()) return b;
  if (std::includes(a->begin(), a->end(), b->begin(), b->end())) return a;
  if (std::includes(b->begin(), b->end(), a->begin(), a->end())) return b;
  auto m = std::make_shared<std::set<std::string>>(*a);
  m->insert(b->begin(), b->end());
  return m;
}

}  // namespace

Term Term::constant(const FieldElement& value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConst;
  n->value = value;
  n->vars = empty_vars();
  return Term(n);
}

Term Term::integer(long v) { return constant(FieldElement(FieldDesc::rationals(), v)); }

Term Term::var(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->name = name;
  n->vars = std::make_shared<const std::set<std::string>>(std::set<std::string>{name});
  return Term(n);
}

Term operator+(const Term& a, const Term& b) {
  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::kAdd;
  n->vars = merge_vars(a.node_->vars, b.node_->vars);
  n->lhs = a;
  n->rhs = b;
  return Term(n);
}

Term operator-(const Term& a, const Term& b) {
  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::kSub;
  n->vars = merge_vars(a.node_->vars, b.node_->vars);
  n->lhs = a;
  n->rhs = b;
  return Term(n);
}

Term operator*(const Term& a, const Term& b) {
  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::kMul;
  n->vars = merge_vars(a.node_->vars, b.node_->vars);
  n->lhs = a;
  n->rhs = b;
  return Term(n);
}

Term Term::operator-() const {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNeg;
  n->vars = node_->vars;
  n->lhs = *this;
  return Term(n);
}

Term::Kind Term::kind() const { return node_->kind; }
const FieldElement& Term::value() const { return node_->value; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::lhs() const { return node_->lhs; }
const Term& Term::rhs() const { return node_->rhs; }
const std::set<std::string>& Term::variables() const { return *node_->vars; }

Term pow(const Term& t, int e) {
  if (e < 0) throw std::invalid_argument("negative exponent in term");
  if (e == 0) return Term::integer(1);
  Term r = t;
  for (int i = 1; i < e; ++i) r = r * t;
  return r;
}

// ---------------------------------------------------------------- formulas

struct Formula::Node {
  Kind kind;
  Term lhs, rhs;
  std::vector<Formula> children;
  std::string var;
  std::set<std::string> free;
};

Formula Formula::eq(const Term& lhs, const Term& rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kEq;
  n->lhs = lhs;
  n->rhs = rhs;
  n->free = lhs.variables();
  n->free.insert(rhs.variables().begin(), rhs.variables().end());
  return Formula(n);
}

Formula Formula::neq(const Term& lhs, const Term& rhs) { return negation(eq(lhs, rhs)); }

Formula Formula::negation(const Formula& f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->children = {f};
  n->free = f.free_variables();
  return Formula(n);
}

Formula Formula::conj(const std::vector<Formula>& children) {
  std::vector<Formula> flat;
  for (const Formula& c : children) {
    if (c.kind() == Kind::kAnd) {
      flat.insert(flat.end(), c.children().begin(), c.children().end());
    } else {
      flat.push_back(c);
    }
  }
  if (flat.empty()) return eq(Term::integer(0), Term::integer(0));
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  for (const Formula& c : flat) n->free.insert(c.free_variables().begin(), c.free_variables().end());
  n->children = std::move(flat);
  return Formula(n);
}

Formula Formula::disj(const std::vector<Formula>& children) {
  std::vector<Formula> flat;
  for (const Formula& c : children) {
    if (c.kind() == Kind::kOr) {
      flat.insert(flat.end(), c.children().begin(), c.children().end());
    } else {
      flat.push_back(c);
    }
  }
  if (flat.empty()) return eq(Term::integer(1), Term::integer(0));
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOr;
  for (const Formula& c : flat) n->free.insert(c.free_variables().begin(), c.free_variables().end());
  n->children = std::move(flat);
  return Formula(n);
}

Formula Formula::exists(const std::string& var, const Formula& body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kExists;
  n->var = var;
  n->children = {body};
  n->free = body.free_variables();
  n->free.erase(var);
  return Formula(n);
}

Formula Formula::forall(const std::string& var, const Formula& body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kForall;
  n->var = var;
  n->children = {body};
  n->free = body.free_variables();
  n->free.erase(var);
  return Formula(n);
}

Formula Formula::exists(const std::vector<std::string>& vars, const Formula& body) {
  Formula f = body;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = exists(*it, f);
  return f;
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Term& Formula::lhs() const { return node_->lhs; }
const Term& Formula::rhs() const { return node_->rhs; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const Formula& Formula::body() const { return node_->children.at(0); }
const std::string& Formula::var() const { return node_->var; }
const std::set<std::string>& Formula::free_variables() const { return node_->free; }

Formula operator&(const Formula& a, const Formula& b) { return Formula::conj({a, b}); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::disj({a, b}); }
Formula operator~(const Formula& a) { return Formula::negation(a); }

// ---------------------------------------------------------------- printing

namespace {

std::string literal(const FieldElement& v) {
  if (v.is_rational() && v.rational().den == 1 && v.rational().num >= 0) return v.rational().num.get_str();
  return "[" + v.to_string() + "]";
}

// Precedence: 1 sum, 2 product, 3 unary and atoms.
void print_term(const Term& t, int ctx, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::kConst:
      out += literal(t.value());
      return;
    case Term::Kind::kVar:
      out += t.name();
      return;
    case Term::Kind::kAdd:
    case Term::Kind::kSub: {
      bool paren = ctx > 1;
      if (paren) out += '(';
      print_term(t.lhs(), 1, out);
      out += t.kind() == Term::Kind::kAdd ? " + " : " - ";
      print_term(t.rhs(), 2, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::kMul: {
      bool paren = ctx > 2;
      if (paren) out += '(';
      print_term(t.lhs(), 2, out);
      out += '*';
      print_term(t.rhs(), 3, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::kNeg:
      out += '-';
      print_term(t.lhs(), 3, out);
      return;
  }
}

// Precedence: 0 quantifier, 1 or, 2 and, 3 not, 4 atom.
void print_formula(const Formula& f, int ctx, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::kEq:
      print_term(f.lhs(), 1, out);
      out += " = ";
      print_term(f.rhs(), 1, out);
      return;
    case Formula::Kind::kNot:
      out += '~';
      print_formula(f.body(), 3, out);
      return;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      int own = f.kind() == Formula::Kind::kOr ? 1 : 2;
      bool paren = ctx >= own;
      if (paren) out += '(';
      bool first = true;
      for (const Formula& c : f.children()) {
        if (!first) out += own == 1 ? " | " : " & ";
        first = false;
        print_formula(c, own, out);
      }
      if (paren) out += ')';
      return;
    }
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      bool paren = ctx > 0;
      if (paren) out += '(';
      out += f.kind() == Formula::Kind::kExists ? "exists " : "forall ";
      out += f.var();
      out += ". ";
      print_formula(f.body(), 0, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print_term(t, 1, out);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print_formula(f, 0, out);
  return out;
}

// ---------------------------------------------------------------- parsing

ParseError::ParseError(std::size_t pos, const std::string& msg)
    : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos) {}

namespace {

class FormulaParser {
 public:
  FormulaParser(const std::string& s, const FieldDesc& field) : s_(s), field_(field) {}

  Formula formula_all() {
    Formula f = formula();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

  Term term_all() {
    Term t = term();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string peek_ident() {
    skip();
    std::size_t p = pos_;
    if (p >= s_.size() || !ident_start(s_[p])) return "";
    while (p < s_.size() && ident_char(s_[p])) ++p;
    return s_.substr(pos_, p - pos_);
  }

  std::string ident() {
    std::string id = peek_ident();
    if (id.empty()) fail("expected identifier");
    if (id == "exists" || id == "forall") fail("keyword used as variable");
    pos_ += id.size();
    return id;
  }

  Formula formula() {
    std::string kw = peek_ident();
    if (kw == "exists" || kw == "forall") {
      pos_ += kw.size();
      std::vector<std::string> vars = {ident()};
      while (!peek('.')) {
        accept(',');
        vars.push_back(ident());
      }
      expect('.');
      Formula body = formula();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        body = kw == "exists" ? Formula::exists(*it, body) : Formula::forall(*it, body);
      }
      return body;
    }
    return disjunction();
  }

  Formula disjunction() {
    std::vector<Formula> parts = {conjunction()};
    while (accept('|')) parts.push_back(conjunction());
    return parts.size() == 1 ? parts[0] : Formula::disj(parts);
  }

  Formula conjunction() {
    std::vector<Formula> parts = {unary()};
    while (accept('&')) parts.push_back(unary());
    return parts.size() == 1 ? parts[0] : Formula::conj(parts);
  }

  Formula unary() {
    if (accept('~')) return Formula::negation(unary());
    std::string kw = peek_ident();
    if (kw == "exists" || kw == "forall") return formula();
    if (peek('(')) {
      std::size_t save = pos_;
      try {
        return atom();
      } catch (const ParseError&) {
        pos_ = save;
      }
      expect('(');
      Formula f = formula();
      expect(')');
      return f;
    }
    return atom();
  }

  Formula atom() {
    Term l = term();
    expect('=');
    Term r = term();
    return Formula::eq(l, r);
  }

  Term term() {
    Term t = product();
    for (;;) {
      if (accept('+')) {
        t = t + product();
      } else if (peek('-')) {
        ++pos_;
        t = t - product();
      } else {
        return t;
      }
    }
  }

  Term product() {
    Term t = factor();
    while (accept('*')) t = t * factor();
    return t;
  }

  Term factor() {
    if (accept('-')) return -factor();
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = term();
      expect(')');
      return t;
    }
    if (c == '[') {
      std::size_t start = ++pos_;
      std::size_t end = s_.find(']', start);
      if (end == std::string::npos) fail("unterminated literal");
      try {
        FieldElement v = parse_element(field_, s_.substr(start, end - start));
        pos_ = end + 1;
        return Term::constant(v);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        fail(std::string("bad literal: ") + e.what());
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Term::constant(FieldElement(FieldDesc::rationals(), Integer(s_.substr(start, pos_ - start))));
    }
    if (ident_start(c)) return Term::var(ident());
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  FieldDesc field_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text, const FieldDesc& field) {
  return FormulaParser(text, field).formula_all();
}

Term parse_term(const std::string& text, const FieldDesc& field) { return FormulaParser(text, field).term_all(); }

// ---------------------------------------------------------------- rank

namespace {

struct RankInfo {
  bool e = false, u = false;
  int re = 0, ru = 0;
};

RankInfo rank_info(const Formula& f) {
  RankInfo r;
  switch (f.kind()) {
    case Formula::Kind::kEq:
      return r;
    case Formula::Kind::kNot: {
      RankInfo c = rank_info(f.body());
      return {c.u, c.e, c.ru, c.re};
    }
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      bool is_and = f.kind() == Formula::Kind::kAnd;
      for (const Formula& ch : f.children()) {
        RankInfo c = rank_info(ch);
        r.e |= c.e;
        r.u |= c.u;
        r.re = is_and ? r.re + c.re : std::max(r.re, c.re);
        r.ru = is_and ? std::max(r.ru, c.ru) : r.ru + c.ru;
      }
      return r;
    }
    case Formula::Kind::kExists: {
      RankInfo c = rank_info(f.body());
      c.e = true;
      c.re += 1;
      return c;
    }
    case Formula::Kind::kForall: {
      RankInfo c = rank_info(f.body());
      c.u = true;
      c.ru += 1;
      return c;
    }
  }
  return r;
}

}  // namespace

Polarity polarity(const Formula& f) {
  RankInfo r = rank_info(f);
  if (r.e && r.u) return Polarity::kMixed;
  if (r.e) return Polarity::kExistential;
  if (r.u) return Polarity::kUniversal;
  return Polarity::kQuantifierFree;
}

std::string to_string(Polarity p) {
  switch (p) {
    case Polarity::kQuantifierFree:
      return "quantifier-free";
    case Polarity::kExistential:
      return "existential";
    case Polarity::kUniversal:
      return "universal";
    case Polarity::kMixed:
      return "mixed";
  }
  return "?";
}

int rank(const Formula& f) {
  RankInfo r = rank_info(f);
  if (r.e && r.u) throw std::invalid_argument("rank: formula mixes existential and universal quantifiers");
  if (r.e) return r.re;
  if (r.u) return r.ru;
  return 0;
}

// ---------------------------------------------------------------- variables

namespace {
void collect_bound(const Formula& f, std::set<std::string>& out) {
  if (f.is_quantifier()) out.insert(f.var());
  if (f.kind() != Formula::Kind::kEq) {
    for (const Formula& c : f.children()) collect_bound(c, out);
  }
}
}  // namespace

std::set<std::string> bound_variables(const Formula& f) {
  std::set<std::string> out;
  collect_bound(f, out);
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out = bound_variables(f);
  out.insert(f.free_variables().begin(), f.free_variables().end());
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!base.empty() && !avoid.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

int degree_in(const Term& t, const std::string& v) {
  std::unordered_map<const void*, int> memo;
  std::function<int(const Term&)> rec = [&](const Term& x) -> int {
    if (!x.has_var(v)) return 0;
    auto it = memo.find(x.id());
    if (it != memo.end()) return it->second;
    int d = 0;
    switch (x.kind()) {
      case Term::Kind::kConst:
        d = 0;
        break;
      case Term::Kind::kVar:
        d = 1;
        break;
      case Term::Kind::kAdd:
      case Term::Kind::kSub:
        d = std::max(rec(x.lhs()), rec(x.rhs()));
        break;
      case Term::Kind::kMul:
        d = rec(x.lhs()) + rec(x.rhs());
        break;
      case Term::Kind::kNeg:
        d = rec(x.lhs());
        break;
    }
    memo.emplace(x.id(), d);
    return d;
  };
  return rec(t);
}

// ---------------------------------------------------------------- substitution

namespace {

class TermRewriter {
 public:
  explicit TermRewriter(const std::map<std::string, Term>& s) : s_(s) {}

  Term operator()(const Term& t) {
    bool touched = false;
    for (const auto& kv : s_) {
      if (t.has_var(kv.first)) {
        touched = true;
        break;
      }
    }
    if (!touched) return t;
    auto it = memo_.find(t.id());
    if (it != memo_.end()) return it->second;
    Term r = t;
    switch (t.kind()) {
      case Term::Kind::kConst:
        break;
      case Term::Kind::kVar:
        r = s_.at(t.name());
        break;
      case Term::Kind::kAdd:
        r = (*this)(t.lhs()) + (*this)(t.rhs());
        break;
      case Term::Kind::kSub:
        r = (*this)(t.lhs()) - (*this)(t.rhs());
        break;
      case Term::Kind::kMul:
        r = (*this)(t.lhs()) * (*this)(t.rhs());
        break;
      case Term::Kind::kNeg:
        r = -(*this)(t.lhs());
        break;
    }
    memo_.emplace(t.id(), r);
    return r;
  }

 private:
  const std::map<std::string, Term>& s_;
  std::unordered_map<const void*, Term> memo_;
};

// num/den^deg representation of t with var := N/D.
class FractionRewriter {
 public:
  FractionRewriter(std::string var, Term num, Term den) : var_(std::move(var)), num_(num), den_(den) {}

  std::pair<Term, int> operator()(const Term& t) {
    if (!t.has_var(var_)) return {t, 0};
    auto it = memo_.find(t.id());
    if (it != memo_.end()) return it->second;
    std::pair<Term, int> r = {t, 0};
    switch (t.kind()) {
      case Term::Kind::kConst:
        break;
      case Term::Kind::kVar:
        r = {num_, 1};
        break;
      case Term::Kind::kAdd:
      case Term::Kind::kSub: {
        auto a = (*this)(t.lhs());
        auto b = (*this)(t.rhs());
        int d = std::max(a.second, b.second);
        Term x = scale(a.first, d - a.second);
        Term y = scale(b.first, d - b.second);
        r = {t.kind() == Term::Kind::kAdd ? x + y : x - y, d};
        break;
      }
      case Term::Kind::kMul: {
        auto a = (*this)(t.lhs());
        auto b = (*this)(t.rhs());
        r = {a.first * b.first, a.second + b.second};
        break;
      }
      case Term::Kind::kNeg: {
        auto a = (*this)(t.lhs());
        r = {-a.first, a.second};
        break;
      }
    }
    memo_.emplace(t.id(), r);
    return r;
  }

  Term scale(const Term& t, int k) {
    if (k == 0) return t;
    if (t.kind() == Term::Kind::kConst && t.value().is_one()) return den_power(k);
    return t * den_power(k);
  }

  Term den_power(int k) {
    while (static_cast<int>(powers_.size()) <= k) {
      powers_.push_back(powers_.empty() ? Term::integer(1) : (powers_.size() == 1 ? den_ : powers_.back() * den_));
    }
    return powers_[k];
  }

 private:
  std::string var_;
  Term num_, den_;
  std::vector<Term> powers_;
  std::unordered_map<const void*, std::pair<Term, int>> memo_;
};

std::set<std::string> vars_of(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const Term& t : ts) out.insert(t.variables().begin(), t.variables().end());
  return out;
}

// Generic capture-avoiding rewrite of atoms.
Formula rewrite(const Formula& f, const std::string& var, const std::set<std::string>& incoming,
                const std::function<Formula(const Formula&)>& atom_fn) {
  if (!f.free_variables().count(var)) return f;
  switch (f.kind()) {
    case Formula::Kind::kEq:
      return atom_fn(f);
    case Formula::Kind::kNot:
      return Formula::negation(rewrite(f.body(), var, incoming, atom_fn));
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      std::vector<Formula> ch;
      ch.reserve(f.children().size());
      for (const Formula& c : f.children()) ch.push_back(rewrite(c, var, incoming, atom_fn));
      return f.kind() == Formula::Kind::kAnd ? Formula::conj(ch) : Formula::disj(ch);
    }
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      std::string v = f.var();
      Formula body = f.body();
      if (incoming.count(v)) {
        std::set<std::string> avoid = all_variables(body);
        avoid.insert(incoming.begin(), incoming.end());
        avoid.insert(var);
        std::string nv = fresh_name(v, avoid);
        body = substitute(body, v, Term::var(nv));
        v = nv;
      }
      body = rewrite(body, var, incoming, atom_fn);
      return f.kind() == Formula::Kind::kExists ? Formula::exists(v, body) : Formula::forall(v, body);
    }
  }
  return f;
}

}  // namespace

Term substitute(const Term& t, const std::map<std::string, Term>& s) {
  TermRewriter rw(s);
  return rw(t);
}

Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  std::map<std::string, Term> s = {{var, replacement}};
  TermRewriter rw(s);
  return rewrite(f, var, replacement.variables(), [&](const Formula& atom) {
    return Formula::eq(rw(atom.lhs()), rw(atom.rhs()));
  });
}

Formula substitute_fraction(const Formula& f, const std::string& var, const Term& num, const Term& den) {
  FractionRewriter rw(var, num, den);
  return rewrite(f, var, vars_of({num, den}), [&](const Formula& atom) {
    auto l = rw(atom.lhs());
    auto r = rw(atom.rhs());
    int d = std::max(l.second, r.second);
    return Formula::eq(rw.scale(l.first, d - l.second), rw.scale(r.first, d - r.second));
  });
}

Formula rename_bound(const Formula& f, const std::set<std::string>& avoid) {
  switch (f.kind()) {
    case Formula::Kind::kEq:
      return f;
    case Formula::Kind::kNot:
      return Formula::negation(rename_bound(f.body(), avoid));
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      std::vector<Formula> ch;
      for (const Formula& c : f.children()) ch.push_back(rename_bound(c, avoid));
      return f.kind() == Formula::Kind::kAnd ? Formula::conj(ch) : Formula::disj(ch);
    }
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      std::string v = f.var();
      Formula body = f.body();
      if (avoid.count(v)) {
        std::set<std::string> all = all_variables(body);
        all.insert(avoid.begin(), avoid.end());
        std::string nv = fresh_name(v, all);
        body = substitute(body, v, Term::var(nv));
        v = nv;
      }
      body = rename_bound(body, avoid);
      return f.kind() == Formula::Kind::kExists ? Formula::exists(v, body) : Formula::forall(v, body);
    }
  }
  return f;
}

Formula normalize_bound_names(const Formula& f, const std::string& prefix) {
  std::set<std::string> taken = f.free_variables();
  int counter = 0;
  std::function<Formula(const Formula&)> rec = [&](const Formula& g) -> Formula {
    switch (g.kind()) {
      case Formula::Kind::kEq:
        return g;
      case Formula::Kind::kNot:
        return Formula::negation(rec(g.body()));
      case Formula::Kind::kAnd:
      case Formula::Kind::kOr: {
        std::vector<Formula> ch;
        for (const Formula& c : g.children()) ch.push_back(rec(c));
        return g.kind() == Formula::Kind::kAnd ? Formula::conj(ch) : Formula::disj(ch);
      }
      case Formula::Kind::kExists:
      case Formula::Kind::kForall: {
        std::string nv;
        do {
          nv = prefix + std::to_string(++counter);
        } while (taken.count(nv));
        taken.insert(nv);
        Formula body = substitute(g.body(), g.var(), Term::var(nv));
        body = rec(body);
        return g.kind() == Formula::Kind::kExists ? Formula::exists(nv, body) : Formula::forall(nv, body);
      }
    }
    return g;
  };
  return rec(f);
}

// ---------------------------------------------------------------- alpha equivalence

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool lookup(const Env& env, const std::string& v, bool left, std::string& out) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if ((left ? it->first : it->second) == v) {
      out = left ? it->second : it->first;
      return true;
    }
  }
  return false;
}

bool term_eq(const Term& a, const Term& b, const Env& env) {
  if (a.kind() != b.kind()) return false;
  if (env.empty() && a.id() == b.id()) return true;
  switch (a.kind()) {
    case Term::Kind::kConst:
      return a.value().field() == b.value().field() && a.value() == b.value();
    case Term::Kind::kVar: {
      std::string ma, mb;
      bool ba = lookup(env, a.name(), true, ma);
      bool bb = lookup(env, b.name(), false, mb);
      if (ba != bb) return false;
      if (!ba) return a.name() == b.name();
      return ma == b.name() && mb == a.name();
    }
    case Term::Kind::kNeg:
      return term_eq(a.lhs(), b.lhs(), env);
    default:
      return term_eq(a.lhs(), b.lhs(), env) && term_eq(a.rhs(), b.rhs(), env);
  }
}

bool formula_eq(const Formula& a, const Formula& b, Env& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kEq:
      return term_eq(a.lhs(), b.lhs(), env) && term_eq(a.rhs(), b.rhs(), env);
    case Formula::Kind::kNot:
      return formula_eq(a.body(), b.body(), env);
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      if (a.children().size() != b.children().size()) return false;
      for (std::size_t i = 0; i < a.children().size(); ++i) {
        if (!formula_eq(a.children()[i], b.children()[i], env)) return false;
      }
      return true;
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      env.emplace_back(a.var(), b.var());
      bool r = formula_eq(a.body(), b.body(), env);
      env.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  Env env;
  return formula_eq(a, b, env);
}

bool alpha_equivalent(const Term& a, const Term& b) { return term_eq(a, b, {}); }

// ---------------------------------------------------------------- combine

Formula combine(const Formula& a, const Formula& b, Connective op) {
  Polarity pa = polarity(a), pb = polarity(b);
  if (pa == Polarity::kMixed || pb == Polarity::kMixed) {
    throw std::invalid_argument("combine: operand mixes quantifier kinds");
  }
  if ((pa == Polarity::kExistential && pb == Polarity::kUniversal) ||
      (pa == Polarity::kUniversal && pb == Polarity::kExistential)) {
    throw std::invalid_argument("combine: mixed polarity (" + to_string(pa) + " with " + to_string(pb) + ")");
  }
  std::set<std::string> avoid_b = all_variables(a);
  avoid_b.insert(b.free_variables().begin(), b.free_variables().end());
  Formula b2 = rename_bound(b, avoid_b);
  std::set<std::string> avoid_a = all_variables(b2);
  avoid_a.insert(a.free_variables().begin(), a.free_variables().end());
  std::set<std::string> clash;
  for (const std::string& v : bound_variables(a)) {
    if (b2.free_variables().count(v)) clash.insert(v);
  }
  Formula a2 = clash.empty() ? a : rename_bound(a, avoid_a);
  return op == Connective::kAnd ? Formula::conj({a2, b2}) : Formula::disj({a2, b2});
}

Formula combine_all(const std::vector<Formula>& parts, Connective op) {
  if (parts.empty()) return op == Connective::kAnd ? Formula::conj({}) : Formula::disj({});
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = combine(acc, parts[i], op);
  return acc;
}

std::size_t term_size(const Term& t) {
  std::unordered_map<const void*, std::size_t> memo;
  constexpr std::size_t kCap = std::size_t(1) << 60;
  std::function<std::size_t(const Term&)> rec = [&](const Term& x) -> std::size_t {
    auto it = memo.find(x.id());
    if (it != memo.end()) return it->second;
    std::size_t n = 1;
    switch (x.kind()) {
      case Term::Kind::kConst:
      case Term::Kind::kVar:
        break;
      case Term::Kind::kNeg:
        n += rec(x.lhs());
        break;
      default:
        n += rec(x.lhs()) + rec(x.rhs());
        break;
    }
    n = std::min(n, kCap);
    memo.emplace(x.id(), n);
    return n;
  };
  return rec(t);
}

std::size_t atom_count(const Formula& f) {
  if (f.kind() == Formula::Kind::kEq) return 1;
  std::size_t n = 0;
  for (const Formula& c : f.children()) n += atom_count(c);
  return n;
}

}  // namespace univdef
