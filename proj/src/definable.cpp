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
#include "univdef/definable.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "univdef/approximation.hpp"

namespace univdef {

OddNeg odd_neg(const FieldElement& c) {
  if (c.is_zero()) throw std::invalid_argument("odd_neg: zero");
  OddNeg r;
  for (const Place& v : support(c)) {
    int val = valuation(c, v);
    if (val % 2 != 0) r.odd.insert(v);
    if (val < 0) r.neg.insert(v);
  }
  return r;
}

bool in_ring(const FieldElement& x, const PlaceSet& places, SigmaMode mode) {
  if (mode != SigmaMode::kPlain && x.is_zero()) return false;
  for (const Place& v : places) {
    int val = valuation(x, v);
    switch (mode) {
      case SigmaMode::kPlain:
        if (val < 0) return false;
        break;
      case SigmaMode::kInverse:
        if (val > 0) return false;
        break;
      case SigmaMode::kUnits:
        if (val != 0) return false;
        break;
    }
  }
  return true;
}

static void require_nonreal(const QuaternionDesc& q) {
  if (!is_nonreal(q)) throw std::invalid_argument("requires nonreal algebras: " + q.to_string());
}

SigmaSet::SigmaSet(const QuaternionDesc& q, const QuaternionDesc& q2) {
  require_nonreal(q);
  require_nonreal(q2);
  PlaceSet d1 = ramification_set(q), d2 = ramification_set(q2);
  for (const Place& v : d1) {
    if (d2.count(v)) places_.insert(v);
  }
}

bool in_sigma(const QuaternionDesc& q, const QuaternionDesc& q2, const FieldElement& x, SigmaMode mode) {
  return SigmaSet(q, q2).contains(x, mode);
}

SOfQResult in_S_of_Q(const QuaternionDesc& q, const FieldElement& t, const SearchBudget& budget) {
  FieldDesc field = q.field();
  SOfQResult result;
  std::size_t limit = std::max<std::size_t>(8, static_cast<std::size_t>(std::sqrt(double(budget.candidates))));
  std::vector<FieldElement> pool;
  int max_h = field.is_rationals() ? budget.height : std::min(budget.height, 8);
  for (int h = field.is_rationals() ? 1 : 0; h <= max_h; ++h) {
    pool = enumerate_by_height(field, h);
    if (pool.size() >= limit) break;
  }
  if (pool.size() > limit) pool.resize(limit);
  const FieldElement one(field, 1), zero(field, 0), two(field, 2);
  const FieldElement &a = q.a(), &b = q.b();
  bool as_form = q.form() == QuaternionDesc::Form::kArtinSchreier;
  FieldElement x1_fixed;
  if (!as_form) x1_fixed = t / two;
  auto check = [&](const FieldElement& e1, const FieldElement& e2) -> bool {
    // AS: (x1, x3) = (e1, e2), x2 = t - 2 x1. CL: (x2, x3) = (e1, e2), x1 = t/2.
    FieldElement x1 = as_form ? e1 : x1_fixed;
    FieldElement x2 = as_form ? t - two * e1 : e1;
    FieldElement x3 = e2;
    std::vector<FieldElement> roots;
    if (as_form) {
      FieldElement R = one - (x1 * x1 + x1 * x2 - a * x2 * x2);
      roots = solve_quadratic(a * b, -(b * x3), -(b * x3 * x3) - R);
      if (a.is_zero() && x3.is_zero() && (-(b * x3 * x3) - R).is_zero()) roots = {zero, one};
    } else {
      FieldElement rhs = one - x1 * x1 + a * x2 * x2 + b * x3 * x3;
      roots = solve_quadratic(a * b, zero, -rhs);
    }
    for (const FieldElement& x4 : roots) {
      if (x2.is_zero() && x3.is_zero() && x4.is_zero()) continue;
      PureQuaternionPoint p{{x1, x2, x3, x4}};
      if (reduced_norm(q, p) == one && reduced_trace(q, p) == t) {
        result.member = true;
        result.witness = p;
        return true;
      }
    }
    return false;
  };
  for (std::size_t k = 0; k < pool.size(); ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      if (result.candidates_tried++ >= budget.candidates) return result;
      if (check(pool[i], pool[k])) return result;
      if (i != k) {
        if (result.candidates_tried++ >= budget.candidates) return result;
        if (check(pool[k], pool[i])) return result;
      }
    }
  }
  return result;
}

bool in_J_places(const PlaceSet& delta, const FieldElement& c, const FieldElement& x) {
  OddNeg on = odd_neg(c);
  for (const Place& v : delta) {
    if (on.odd.count(v) && valuation(x, v) < 1) return false;
  }
  return true;
}

bool in_H_places(const PlaceSet& delta, const FieldElement& c, const FieldElement& x) {
  for (const Place& v : delta) {
    int vc = valuation(c, v);
    if (vc < 0 && valuation(x, v) < -vc) return false;
  }
  return true;
}

bool in_J(const QuaternionDesc& q, const FieldElement& c, const FieldElement& x) {
  if (c.is_zero()) throw std::invalid_argument("J needs c != 0");
  require_nonreal(q);
  return in_J_places(ramification_set(q), c, x);
}

bool in_H(const QuaternionDesc& q, const FieldElement& c, const FieldElement& x) {
  if (c.is_zero()) throw std::invalid_argument("H needs c != 0");
  require_nonreal(q);
  return in_H_places(ramification_set(q), c, x);
}

bool in_phi(const PlaceSet& S, const FieldElement& u, const FieldElement& a, const FieldElement& b) {
  for (const Place& v : S) {
    if (u.is_zero() || valuation(u, v) != 0) {
      throw std::invalid_argument("u is not a unit at " + v.to_string());
    }
  }
  if (b.is_zero()) return false;
  for (const Place& v : S) {
    if (valuation(b, v) != 0) return false;
    if (valuation(a - u, v) < 1) return false;
  }
  return true;
}

QuaternionDesc t_algebra(const SynthesisPack& pack, const FieldElement& a, const FieldElement& b) {
  return QuaternionDesc::artin_schreier(a * a, b * pack.pi);
}

bool in_T_places(const PlaceSet& delta, const SynthesisPack& pack, const FieldElement& a,
                 const FieldElement& b, const FieldElement& x) {
  FieldDesc field = pack.field;
  FieldElement one(field, 1), four(field, 4);
  return in_J_places(delta, one + four * a * a, x) && in_J_places(delta, b, x) &&
         in_J_places(delta, pack.c, x) && (a.is_zero() || in_H_places(delta, a, x));
}

bool in_T(const SynthesisPack& pack, const FieldElement& a, const FieldElement& b, const FieldElement& x) {
  if (!in_phi(pack.S, pack.u, a, b)) {
    throw std::invalid_argument("(a, b) = (" + a.to_string() + ", " + b.to_string() + ") is outside Phi");
  }
  return in_T_places(ramification_set(t_algebra(pack, a, b)), pack, a, b, x);
}

bool in_O_S(const FieldElement& x, const PlaceSet& S) {
  if (x.is_zero()) return true;
  for (const Place& v : support(x)) {
    if (!S.count(v) && valuation(x, v) < 0) return false;
  }
  return true;
}

bool in_complement_union(const FieldElement& x, const PlaceSet& S) {
  if (x.is_zero()) return true;
  for (const Place& v : support(x)) {
    if (!S.count(v) && valuation(x, v) > 0) return true;
  }
  return false;
}

namespace {

// Element with exact valuation k_v at each listed place.
FieldElement with_valuations(const FieldDesc& field, const std::vector<std::pair<Place, int>>& wanted) {
  std::vector<ApproximationTarget> targets;
  for (const auto& [v, k] : wanted) targets.push_back({v, v.uniformizer().pow(k), k});
  if (targets.empty()) return FieldElement(field, 1);
  return weak_approximate(field, targets);
}

int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

}  // namespace

bool j_witness_valid(const PlaceSet& delta, const FieldElement& c, const FieldElement& x,
                     const FieldElement& y) {
  if (y.is_zero()) return false;
  FieldElement s = c * y * y;
  FieldElement t = FieldElement(c.field(), 1) - s;
  if (t.is_zero()) return false;
  if (!in_ring(x / s, delta, SigmaMode::kPlain)) return false;
  for (const Place& v : delta) {
    if (valuation(t, v) % 2 != 0) return false;
  }
  return true;
}

std::optional<JWitness> construct_j_witness(const PlaceSet& delta, const FieldElement& c,
                                            const FieldElement& x) {
  if (!in_J_places(delta, c, x)) return std::nullopt;
  FieldDesc field = c.field();
  std::vector<std::pair<Place, int>> wanted;
  for (const Place& v : delta) {
    int vc = valuation(c, v);
    if (vc % 2 != 0) {
      wanted.emplace_back(v, (1 - vc) / 2);  // v(c y^2) = 1
    } else {
      int vx = valuation(x, v);
      int cap = vx == kInfiniteValuation ? -2 : std::min(vx, -2);
      wanted.emplace_back(v, floor_half(cap - vc));  // v(c y^2) <= min(v(x), -2), even
    }
  }
  FieldElement y = with_valuations(field, wanted);
  FieldElement t = FieldElement(field, 1) - c * y * y;
  std::vector<std::pair<Place, int>> q_wanted;
  for (const Place& v : delta) {
    int vt = valuation(t, v);
    if (vt == kInfiniteValuation || vt % 2 != 0) return std::nullopt;
    q_wanted.emplace_back(v, -vt / 2);
  }
  FieldElement q = with_valuations(field, q_wanted);
  if (!j_witness_valid(delta, c, x, y) || !in_ring(t * q * q, delta, SigmaMode::kUnits)) return std::nullopt;
  return JWitness{y, q};
}

bool h_witness_valid(const PlaceSet& delta, const FieldElement& c, const FieldElement& x,
                     const FieldElement& y) {
  if (x.is_zero()) return true;
  FieldDesc field = c.field();
  if (!in_ring(c * y, delta, SigmaMode::kPlain)) return false;
  FieldElement w = (FieldElement(field, 1) - x * y) / (c * x);
  return in_ring(w, delta, SigmaMode::kInverse);
}

std::optional<FieldElement> construct_h_witness(const PlaceSet& delta, const FieldElement& c,
                                                const FieldElement& x) {
  if (!in_H_places(delta, c, x)) return std::nullopt;
  FieldDesc field = c.field();
  if (x.is_zero()) return FieldElement(field, 0);
  std::vector<std::pair<Place, int>> wanted;
  for (const Place& v : delta) {
    int vc = valuation(c, v), vx = valuation(x, v);
    int k = -vc;
    if (vc >= 0 && vx + vc >= 0) k = std::max(-vc, 1 - vx);
    wanted.emplace_back(v, k);
  }
  FieldElement y = with_valuations(field, wanted);
  if (!h_witness_valid(delta, c, x, y)) return std::nullopt;
  return y;
}

// ---------------------------------------------------------------------------
// Set expressions.

struct SetExpr::Impl {
  std::string kind;
  FieldDesc field;
  std::vector<QuaternionDesc> algebras;
  FieldElement c, u, a, b;
  PlaceSet S;
  SynthesisPack pack;
};

namespace {

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

// Splits "Name[args](more)" style prefixes.
bool take_bracket(const std::string& s, std::size_t pos, char open, char close, std::string& inner,
                  std::size_t& end) {
  if (pos >= s.size() || s[pos] != open) return false;
  int depth = 0;
  for (std::size_t i = pos; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (depth == 0) {
      if (ch != close) return false;
      inner = s.substr(pos + 1, i - pos - 1);
      end = i + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

SetExpr SetExpr::parse(const FieldDesc& field, const std::string& text_in) {
  std::string text;
  for (char ch : text_in) {
    if (ch != ' ') text += ch;
  }
  auto impl = std::make_shared<Impl>();
  impl->field = field;
  auto fail = [&]() -> SetExpr {
    throw std::invalid_argument("bad set expression '" + text_in + "'");
  };
  std::size_t open = text.find_first_of("([");
  if (open == std::string::npos) return fail();
  std::string name = text.substr(0, open);
  impl->kind = name;
  std::string inner, inner2;
  std::size_t end = 0, end2 = 0;
  if (name == "Sigma" || name == "SigmaInv" || name == "SigmaUnits") {
    if (!take_bracket(text, open, '(', ')', inner, end) || end != text.size()) return fail();
    auto parts = split_top(inner, ';');
    if (parts.size() != 2) return fail();
    for (auto& p : parts) impl->algebras.push_back(QuaternionDesc::parse(field, p));
    for (auto& q : impl->algebras) require_nonreal(q);
  } else if (name == "SQ") {
    if (!take_bracket(text, open, '(', ')', inner, end) || end != text.size()) return fail();
    impl->algebras.push_back(QuaternionDesc::parse(field, inner));
  } else if (name == "J" || name == "H") {
    if (!take_bracket(text, open, '[', ']', inner, end)) return fail();
    if (!take_bracket(text, end, '(', ')', inner2, end2) || end2 != text.size()) return fail();
    impl->c = parse_element(field, inner);
    if (impl->c.is_zero()) throw std::invalid_argument(name + " needs c != 0");
    impl->algebras.push_back(QuaternionDesc::parse(field, inner2));
    require_nonreal(impl->algebras[0]);
  } else if (name == "Phi") {
    if (!take_bracket(text, open, '[', ']', inner, end) || end != text.size()) return fail();
    auto parts = split_top(inner, ';');
    if (parts.size() != 2) return fail();
    impl->S = parse_place_set(field, parts[0]);
    impl->u = parse_element(field, parts[1]);
  } else if (name == "T") {
    if (!take_bracket(text, open, '[', ']', inner, end) || end != text.size()) return fail();
    auto parts = split_top(inner, ';');
    if (parts.size() != 3) return fail();
    impl->pack = SynthesisPack::parse(field, parts[0]);
    impl->a = parse_element(field, parts[1]);
    impl->b = parse_element(field, parts[2]);
    if (!in_phi(impl->pack.S, impl->pack.u, impl->a, impl->b)) {
      throw std::invalid_argument("T[pack;a;b] needs (a, b) in Phi");
    }
  } else if (name == "OS" || name == "U") {
    if (!take_bracket(text, open, '[', ']', inner, end) || end != text.size()) return fail();
    impl->S = parse_place_set(field, inner);
  } else {
    return fail();
  }
  SetExpr e;
  e.impl_ = impl;
  return e;
}

const std::string& SetExpr::kind() const { return impl_->kind; }

Tri SetExpr::contains(const std::string& x_text) const {
  const Impl& m = *impl_;
  if (m.kind == "Phi") {
    auto parts = split_top(x_text, ',');
    if (parts.size() != 2) throw std::invalid_argument("Phi membership needs 'a,b'");
    return tri(in_phi(m.S, m.u, parse_element(m.field, parts[0]), parse_element(m.field, parts[1])));
  }
  FieldElement x = parse_element(m.field, x_text);
  if (m.kind == "Sigma") return tri(in_sigma(m.algebras[0], m.algebras[1], x, SigmaMode::kPlain));
  if (m.kind == "SigmaInv") return tri(in_sigma(m.algebras[0], m.algebras[1], x, SigmaMode::kInverse));
  if (m.kind == "SigmaUnits") return tri(in_sigma(m.algebras[0], m.algebras[1], x, SigmaMode::kUnits));
  if (m.kind == "SQ") return in_S_of_Q(m.algebras[0], x).member ? Tri::kTrue : Tri::kUnknown;
  if (m.kind == "J") return tri(in_J(m.algebras[0], m.c, x));
  if (m.kind == "H") return tri(in_H(m.algebras[0], m.c, x));
  if (m.kind == "T") return tri(in_T(m.pack, m.a, m.b, x));
  if (m.kind == "OS") return tri(in_O_S(x, m.S));
  if (m.kind == "U") return tri(in_complement_union(x, m.S));
  throw std::logic_error("unknown set kind");
}

}  // namespace univdef
