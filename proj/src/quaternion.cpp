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
#include "univdef/quaternion.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace univdef {
namespace {

bool is_char2(const FieldDesc& field) {
  return !field.is_rationals() && field.characteristic() == 2;
}

FieldElement one_plus_4a(const FieldElement& a) {
  FieldDesc f = a.field();
  return FieldElement(f, 1) + FieldElement(f, 4) * a;
}

// (alpha, beta) with the same local behaviour as q; characteristic != 2.
std::pair<FieldElement, FieldElement> classical_pair(const QuaternionDesc& q) {
  if (q.form() == QuaternionDesc::Form::kClassical) return {q.a(), q.b()};
  return {one_plus_4a(q.a()), q.b()};
}

std::vector<std::string> split_args(const std::string& inner, const std::string& text) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : inner) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ';' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 2) throw std::invalid_argument("quaternion descriptor needs two entries: '" + text + "'");
  return parts;
}

// 2-adic unit u (as a rational) modulo 8.
unsigned mod8(const FieldElement& u) {
  Integer m = 8;
  return static_cast<unsigned>(
      mod_floor(u.rational().num * inverse_mod(u.rational().den, m), m).get_ui());
}

int dyadic_symbol(const FieldElement& alpha, const FieldElement& beta) {
  Place two = Place::prime(2);
  int i = valuation(alpha, two), j = valuation(beta, two);
  FieldDesc Q = FieldDesc::rationals();
  FieldElement u = alpha / FieldElement(Q, 2).pow(i), w = beta / FieldElement(Q, 2).pow(j);
  unsigned um = mod8(u), wm = mod8(w);
  auto eps = [](unsigned x) { return ((x - 1) / 2) % 2; };
  auto omega = [](unsigned x) { return ((x * x - 1) / 8) % 2; };
  unsigned e = eps(um) * eps(wm) + static_cast<unsigned>(std::abs(i) % 2) * omega(wm) +
               static_cast<unsigned>(std::abs(j) % 2) * omega(um);
  return e % 2 == 0 ? 1 : -1;
}

FieldElement derivative(const FieldElement& b) {
  const auto& f = b.rational_function();
  return FieldElement::fraction(f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den);
}

bool local_splits_char2(const QuaternionDesc& q, const Place& v) {
  FieldElement a = artin_schreier_reduce(q.a(), v);
  int va = valuation(a, v);
  if (va > 0) return true;
  if (va == 0) {
    ResidueField k(v);
    if (!k.artin_schreier_irreducible(k.reduce(a))) return true;
    return valuation(q.b(), v) % 2 == 0;
  }
  return artin_schreier_symbol(a, q.b(), v) == 0;
}

}  // namespace

QuaternionDesc QuaternionDesc::artin_schreier(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) throw std::invalid_argument("quaternion entries from different fields");
  if (b.is_zero() || one_plus_4a(a).is_zero()) {
    throw std::invalid_argument("[a, b) needs b(1+4a) != 0");
  }
  return QuaternionDesc(Form::kArtinSchreier, a, b);
}

QuaternionDesc QuaternionDesc::classical(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) throw std::invalid_argument("quaternion entries from different fields");
  if (is_char2(a.field())) throw std::invalid_argument("(a, b) needs characteristic != 2");
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("(a, b) needs ab != 0");
  return QuaternionDesc(Form::kClassical, a, b);
}

QuaternionDesc QuaternionDesc::parse(const FieldDesc& field, const std::string& text_in) {
  std::string text;
  for (char c : text_in) {
    if (c != ' ') text += c;
  }
  if (text.size() >= 5 && text.rfind("AS[", 0) == 0 && (text.back() == ']' || text.back() == ')')) {
    auto parts = split_args(text.substr(3, text.size() - 4), text_in);
    return artin_schreier(parse_element(field, parts[0]), parse_element(field, parts[1]));
  }
  if (text.size() >= 5 && text.rfind("CL(", 0) == 0 && text.back() == ')') {
    auto parts = split_args(text.substr(3, text.size() - 4), text_in);
    return classical(parse_element(field, parts[0]), parse_element(field, parts[1]));
  }
  throw std::invalid_argument("bad quaternion descriptor '" + text_in + "' (expected AS[a;b] or CL(a;b))");
}

std::string QuaternionDesc::to_string() const {
  if (form_ == Form::kArtinSchreier) return "AS[" + a_.to_string() + ";" + b_.to_string() + "]";
  return "CL(" + a_.to_string() + ";" + b_.to_string() + ")";
}

QuaternionDesc classicalize(const QuaternionDesc& q) {
  if (is_char2(q.field())) throw std::domain_error("no classical form in characteristic 2");
  if (q.form() == QuaternionDesc::Form::kClassical) return q;
  return QuaternionDesc::classical(one_plus_4a(q.a()), q.b());
}

FieldElement reduced_norm(const QuaternionDesc& q, const PureQuaternionPoint& p) {
  const auto& x = p.x;
  const FieldElement &a = q.a(), &b = q.b();
  if (q.form() == QuaternionDesc::Form::kArtinSchreier) {
    return x[0] * x[0] + x[0] * x[1] - a * x[1] * x[1] - b * (x[2] * x[2] + x[2] * x[3] - a * x[3] * x[3]);
  }
  return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

FieldElement reduced_trace(const QuaternionDesc& q, const PureQuaternionPoint& p) {
  FieldElement two(q.field(), 2);
  if (q.form() == QuaternionDesc::Form::kArtinSchreier) return two * p.x[0] + p.x[1];
  return two * p.x[0];
}

int hilbert_symbol(const FieldElement& alpha, const FieldElement& beta, const Place& v) {
  if (alpha.is_zero() || beta.is_zero()) throw std::invalid_argument("hilbert_symbol: zero entry");
  if (is_char2(alpha.field())) throw std::domain_error("hilbert_symbol: characteristic 2");
  if (alpha.is_rational() && v.prime_number() == 2) return dyadic_symbol(alpha, beta);
  int i = valuation(alpha, v), j = valuation(beta, v);
  // Tame symbol: (-1)^{ij} alpha^j / beta^i is a unit.
  FieldElement t = alpha.pow(j) / beta.pow(i);
  if ((static_cast<long>(i) * j) % 2 != 0) t = -t;
  ResidueField k(v);
  return k.quadratic_character(k.reduce(t));
}

FieldElement artin_schreier_reduce(const FieldElement& a_in, const Place& v) {
  if (!is_char2(a_in.field())) throw std::domain_error("artin_schreier_reduce: characteristic 2 only");
  FieldElement a = a_in;
  ResidueField k(v);
  FieldElement pi = v.uniformizer();
  while (true) {
    int val = valuation(a, v);
    if (val == kInfiniteValuation || val >= 0 || (-val) % 2 == 1) return a;
    int m = -val;
    FieldElement unit = a * pi.pow(m);
    FpPoly w = std::get<FpPoly>(k.reduce(unit).value);
    // Square root in F_{2^d} is the (d-1)-fold Frobenius.
    FpPoly modulus = v.is_infinite() ? FpPoly::variable(2) : v.polynomial();
    FpPoly s = w;
    for (int i = 1; i < v.degree(); ++i) s = (s * s) % modulus;
    FieldElement c = FieldElement::polynomial(s) * pi.pow(-(m / 2));
    a = a + c * c + c;
  }
}

std::uint32_t residue_trace(const FieldElement& f, const Place& v) {
  if (f.is_zero()) return 0;
  const auto& rf = f.rational_function();
  std::uint32_t p = rf.num.prime();
  if (v.is_infinite()) {
    // Res_inf(f dT) = -(coefficient of 1/T in the expansion at infinity).
    FpPoly quo, rem;
    divmod(rf.num, rf.den, quo, rem);
    if (rem.is_zero() || rem.degree() != rf.den.degree() - 1) return 0;
    std::uint32_t c = mul_mod(rem.leading(), inv_mod(rf.den.leading(), p), p);
    return (p - c) % p;
  }
  const FpPoly& P = v.polynomial();
  int m = poly_valuation(rf.den, P);
  if (m <= 0) return 0;
  FpPoly Pm = poly_pow(P, m);
  FpPoly C = rf.den / Pm;
  FpPoly N = (rf.num * inverse_mod(C, Pm)) % Pm;
  // The P-primary part N / P^m has trace residue = coefficient of T^{md-1} in N.
  return N.coeff(m * P.degree() - 1);
}

int artin_schreier_symbol(const FieldElement& a, const FieldElement& b, const Place& v) {
  if (!is_char2(a.field())) throw std::domain_error("artin_schreier_symbol: characteristic 2 only");
  FieldElement f = a * derivative(b) / b;
  return static_cast<int>(residue_trace(f, v) % 2);
}

bool local_splits(const QuaternionDesc& q, const Place& v) {
  if (v.field() != q.field()) throw std::invalid_argument("place from another field");
  if (is_char2(q.field())) return local_splits_char2(q, v);
  if (q.form() == QuaternionDesc::Form::kArtinSchreier && q.a().is_zero()) return true;
  auto [alpha, beta] = classical_pair(q);
  return hilbert_symbol(alpha, beta, v) == 1;
}

PlaceSet ramification_set(const QuaternionDesc& q) {
  // Outside these candidates a and b are units with 1+4a a unit, and the
  // local necessary conditions force splitting.
  PlaceSet candidates;
  auto add = [&](const FieldElement& x) {
    if (x.is_zero()) return;
    for (const Place& v : support(x)) candidates.insert(v);
  };
  if (q.form() == QuaternionDesc::Form::kArtinSchreier) {
    add(q.a());
    add(one_plus_4a(q.a()));
  } else {
    add(q.a());
  }
  add(q.b());
  FieldDesc field = q.field();
  if (field.is_rationals()) {
    candidates.insert(Place::prime(2));
  } else {
    candidates.insert(Place::degree_place(field.characteristic()));
  }
  PlaceSet result;
  for (const Place& v : candidates) {
    if (!local_splits(q, v)) result.insert(v);
  }
  return result;
}

bool is_nonreal(const QuaternionDesc& q) {
  if (!q.field().is_rationals()) return true;
  auto [alpha, beta] = classical_pair(q);
  return alpha.sign() > 0 || beta.sign() > 0;
}

std::string to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::kSplit:
      return "split";
    case OracleVerdict::kNonsplit:
      return "nonsplit";
    case OracleVerdict::kInconclusive:
      return "inconclusive";
  }
  return "";
}

int certified_precision(const QuaternionDesc& q, const Place& v) {
  FieldElement a = q.a();
  if (is_char2(q.field())) a = artin_schreier_reduce(a, v);
  int va = a.is_zero() ? 0 : std::abs(valuation(a, v));
  return 2 * va + std::abs(valuation(q.b(), v)) + 5;
}

namespace {

struct TernaryForm {
  // c0 x^2 + c1 xy + c2 y^2 + c3 z^2, integral at v.
  std::array<FieldElement, 4> c;
};

int floor_div2(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

TernaryForm integral_form(const QuaternionDesc& q, const Place& v) {
  FieldDesc field = q.field();
  FieldElement pi = v.uniformizer();
  FieldElement zero(field, 0), one(field, 1);
  TernaryForm F;
  if (q.form() == QuaternionDesc::Form::kArtinSchreier) {
    F.c = {one, one, -q.a(), -q.b()};
  } else {
    F.c = {one, zero, -q.a(), -q.b()};
  }
  int ey = 0;
  if (!F.c[2].is_zero()) {
    int v2 = valuation(F.c[2], v);
    if (F.c[1].is_zero()) {
      ey = -floor_div2(v2);
    } else if (v2 < 0) {
      ey = (-v2 + 1) / 2;
    }
  }
  int ez = -floor_div2(valuation(F.c[3], v));
  F.c[1] = F.c[1] * pi.pow(ey);
  F.c[2] = F.c[2] * pi.pow(2 * ey);
  F.c[3] = F.c[3] * pi.pow(2 * ez);
  return F;
}

class OracleSearch {
 public:
  OracleSearch(const TernaryForm& F, const Place& v, std::size_t budget)
      : F_(F), v_(v), budget_(budget), pi_(v.uniformizer()) {
    ResidueField k(v);
    std::uint64_t q = v.residue_size().get_ui();
    for (std::uint64_t i = 0; i < q; ++i) digits_.push_back(k.lift(k.element(i)));
    if (!v.field().is_rationals()) {
      for (auto& d : digits_) d = coerce(d, v.field());
    }
  }

  OracleVerdict run(int precision) {
    bool open = false;
    for (int chart = 0; chart < 3; ++chart) {
      OracleVerdict r = run_chart(chart, precision);
      if (r == OracleVerdict::kSplit) return r;
      if (r == OracleVerdict::kInconclusive) open = true;
    }
    return open ? OracleVerdict::kInconclusive : OracleVerdict::kNonsplit;
  }

 private:
  std::array<FieldElement, 3> point(int chart, const FieldElement& s, const FieldElement& t) const {
    FieldElement one(v_.field(), 1);
    if (chart == 0) return {one, s, t};
    if (chart == 1) return {pi_ * s, one, t};
    return {pi_ * s, pi_ * t, one};
  }

  FieldElement eval(const std::array<FieldElement, 3>& y) const {
    return F_.c[0] * y[0] * y[0] + F_.c[1] * y[0] * y[1] + F_.c[2] * y[1] * y[1] + F_.c[3] * y[2] * y[2];
  }

  bool hensel_certificate(const std::array<FieldElement, 3>& y, int vf) const {
    if (vf == kInfiniteValuation) return true;
    FieldElement two(v_.field(), 2);
    std::array<FieldElement, 3> grad = {two * F_.c[0] * y[0] + F_.c[1] * y[1],
                                        F_.c[1] * y[0] + two * F_.c[2] * y[1], two * F_.c[3] * y[2]};
    for (const auto& g : grad) {
      int vg = valuation(g, v_);
      if (vg != kInfiniteValuation && vf > 2 * vg) return true;
    }
    return false;
  }

  OracleVerdict run_chart(int chart, int precision) {
    struct Node {
      FieldElement s, t;
    };
    FieldDesc field = v_.field();
    std::vector<Node> level = {{FieldElement(field, 0), FieldElement(field, 0)}};
    FieldElement scale(field, 1);  // pi^depth
    for (int depth = 0;; ++depth) {
      std::vector<Node> next;
      bool open = false;
      for (const Node& n : level) {
        auto y = point(chart, n.s, n.t);
        int vf = valuation(eval(y), v_);
        if (vf != kInfiniteValuation && vf < depth) continue;
        if (hensel_certificate(y, vf)) return OracleVerdict::kSplit;
        if (depth == precision || nodes_ > budget_) {
          open = true;
          continue;
        }
        for (const auto& ds : digits_) {
          for (const auto& dt : digits_) {
            ++nodes_;
            next.push_back({n.s + ds * scale, n.t + dt * scale});
          }
        }
      }
      if (open) return OracleVerdict::kInconclusive;
      if (next.empty()) return OracleVerdict::kNonsplit;
      level = std::move(next);
      scale = scale * pi_;
    }
  }

  TernaryForm F_;
  Place v_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  FieldElement pi_;
  std::vector<FieldElement> digits_;
};

}  // namespace

OracleVerdict local_split_oracle(const QuaternionDesc& q, const Place& v, int precision,
                                 std::size_t node_budget) {
  if (precision < 1) throw std::invalid_argument("local_split_oracle: precision must be >= 1");
  if (v.residue_size() > 4096) return OracleVerdict::kInconclusive;
  TernaryForm F = integral_form(q, v);
  return OracleSearch(F, v, node_budget).run(precision);
}

}  // namespace univdef
