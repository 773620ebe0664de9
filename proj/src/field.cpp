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
#include "univdef/field.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace univdef {

FieldDesc FieldDesc::function_field(std::uint32_t p) {
  if (p < 2 || !is_prime(Integer(p))) {
    throw std::invalid_argument("function field needs a prime characteristic");
  }
  if (p > 65521) throw std::invalid_argument("characteristic too large");
  FieldDesc f;
  f.family_ = Family::kRationalFunctions;
  f.p_ = p;
  return f;
}

FieldDesc FieldDesc::parse(const std::string& text) {
  if (text == "Q" || text == "QQ") return rationals();
  // F<p>(T)
  if (text.size() > 4 && text[0] == 'F' && text.substr(text.size() - 3) == "(T)") {
    std::string digits = text.substr(1, text.size() - 4);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return function_field(static_cast<std::uint32_t>(std::stoul(digits)));
    }
  }
  throw std::invalid_argument("unknown field '" + text + "' (expected Q or F<p>(T))");
}

std::string FieldDesc::name() const {
  if (is_rationals()) return "Q";
  return "F" + std::to_string(p_) + "(T)";
}

namespace {

FieldElement::Rational normalize(Integer num, Integer den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1 && g != 0) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return {num, den};
}

FieldElement::RationalFunction normalize(FpPoly num, FpPoly den) {
  if (den.is_zero()) throw std::domain_error("division by zero");
  if (num.is_zero()) return {num, FpPoly::constant(den.prime(), 1)};
  FpPoly g = gcd(num, den);
  if (!g.is_one()) {
    num = num / g;
    den = den / g;
  }
  std::uint32_t inv = inv_mod(den.leading(), den.prime());
  return {num.scaled(inv), den.scaled(inv)};
}

}  // namespace

FieldElement::FieldElement(const FieldDesc& field, long n) : FieldElement(field, Integer(n)) {}

FieldElement::FieldElement(const FieldDesc& field, const Integer& n) {
  if (field.is_rationals()) {
    value_ = Rational{n, 1};
  } else {
    std::uint32_t p = field.characteristic();
    value_ = RationalFunction{FpPoly::constant(p, mod_u32(n, p)), FpPoly::constant(p, 1)};
  }
}

FieldElement FieldElement::fraction(const Integer& num, const Integer& den) {
  FieldElement r;
  r.value_ = normalize(num, den);
  return r;
}

FieldElement FieldElement::fraction(const FpPoly& num, const FpPoly& den) {
  if (num.prime() != den.prime()) throw std::invalid_argument("characteristic mismatch");
  FieldElement r;
  r.value_ = normalize(num, den);
  return r;
}

FieldElement FieldElement::polynomial(const FpPoly& f) {
  return fraction(f, FpPoly::constant(f.prime(), 1));
}

FieldElement FieldElement::generator(const FieldDesc& field) {
  if (field.is_rationals()) throw std::invalid_argument("Q has no generator T");
  return polynomial(FpPoly::variable(field.characteristic()));
}

FieldDesc FieldElement::field() const {
  if (is_rational()) return FieldDesc::rationals();
  return FieldDesc::function_field(std::get<RationalFunction>(value_).num.prime());
}

const FieldElement::Rational& FieldElement::rational() const {
  if (!is_rational()) throw std::logic_error("not a rational number");
  return std::get<Rational>(value_);
}

const FieldElement::RationalFunction& FieldElement::rational_function() const {
  if (is_rational()) throw std::logic_error("not a rational function");
  return std::get<RationalFunction>(value_);
}

bool FieldElement::is_zero() const {
  if (is_rational()) return rational().num == 0;
  return rational_function().num.is_zero();
}

bool FieldElement::is_one() const {
  if (is_rational()) return rational().num == 1 && rational().den == 1;
  return rational_function().num.is_one() && rational_function().den.is_one();
}

bool FieldElement::is_integral() const {
  if (is_rational()) return rational().den == 1;
  return rational_function().den.is_one();
}

static void check_fields(const FieldElement& a, const FieldElement& b) {
  if (a.is_rational() != b.is_rational() ||
      (!a.is_rational() && a.rational_function().num.prime() != b.rational_function().num.prime())) {
    throw std::invalid_argument("field mismatch: " + a.field().name() + " vs " + b.field().name());
  }
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_fields(a, b);
  FieldElement r;
  if (a.is_rational()) {
    const auto &x = a.rational(), &y = b.rational();
    if (x.den == 1 && y.den == 1) {
      r.value_ = FieldElement::Rational{x.num + y.num, 1};
      return r;
    }
    r.value_ = normalize(x.num * y.den + y.num * x.den, x.den * y.den);
  } else {
    const auto &x = a.rational_function(), &y = b.rational_function();
    if (x.den == y.den) {
      r.value_ = normalize(x.num + y.num, x.den);
    } else {
      r.value_ = normalize(x.num * y.den + y.num * x.den, x.den * y.den);
    }
  }
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  if (is_rational()) {
    std::get<Rational>(r.value_).num = -rational().num;
  } else {
    std::get<RationalFunction>(r.value_).num = -rational_function().num;
  }
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_fields(a, b);
  FieldElement r;
  if (a.is_rational()) {
    const auto &x = a.rational(), &y = b.rational();
    if (x.den == 1 && y.den == 1) {
      r.value_ = FieldElement::Rational{x.num * y.num, 1};
      return r;
    }
    r.value_ = normalize(x.num * y.num, x.den * y.den);
  } else {
    const auto &x = a.rational_function(), &y = b.rational_function();
    r.value_ = normalize(x.num * y.num, x.den * y.den);
  }
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  FieldElement r;
  if (is_rational()) {
    r.value_ = normalize(rational().den, rational().num);
  } else {
    r.value_ = normalize(rational_function().den, rational_function().num);
  }
  return r;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result(field(), 1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.is_rational() != b.is_rational()) return false;
  if (a.is_rational()) return a.rational().num == b.rational().num && a.rational().den == b.rational().den;
  return a.rational_function().num == b.rational_function().num &&
         a.rational_function().den == b.rational_function().den;
}

Integer FieldElement::height() const {
  if (is_rational()) {
    Integer n = abs(rational().num);
    return n > rational().den ? n : rational().den;
  }
  return std::max(rational_function().num.degree(), rational_function().den.degree());
}

int FieldElement::sign() const { return sgn(rational().num); }

std::string FieldElement::to_string() const {
  if (is_rational()) {
    const auto& x = rational();
    if (x.den == 1) return x.num.get_str();
    return x.num.get_str() + "/" + x.den.get_str();
  }
  const auto& x = rational_function();
  if (x.den.is_one()) return x.num.to_string();
  auto wrap = [](const FpPoly& f) {
    std::string s = f.to_string();
    return s.find('+') == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(x.num) + "/" + wrap(x.den);
}

bool height_less(const FieldElement& a, const FieldElement& b) {
  Integer ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  if (a.is_rational()) {
    const auto &x = a.rational(), &y = b.rational();
    if (x.den != y.den) return x.den < y.den;
    Integer ax = abs(x.num), ay = abs(y.num);
    if (ax != ay) return ax < ay;
    return x.num > y.num;  // positive before negative
  }
  const auto &x = a.rational_function(), &y = b.rational_function();
  if (x.den != y.den) return x.den < y.den;
  return x.num < y.num;
}

static std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

static std::string strip_parens(std::string s) {
  s = strip(s);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool outer = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0) {
        outer = false;
        break;
      }
    }
    if (!outer) break;
    s = strip(s.substr(1, s.size() - 2));
  }
  return s;
}

FieldElement parse_element(const FieldDesc& field, const std::string& text_in) {
  std::string text = strip(text_in);
  if (text.empty()) throw std::invalid_argument("empty field element");
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      if (slash != std::string::npos) throw std::invalid_argument("bad element '" + text + "'");
      slash = i;
    }
  }
  std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  num = strip_parens(num);
  den = strip_parens(den);
  if (field.is_rationals()) {
    return FieldElement::fraction(parse_integer(num), parse_integer(den));
  }
  std::uint32_t p = field.characteristic();
  FpPoly d = parse_poly(p, den);
  if (d.is_zero()) throw std::domain_error("zero denominator in '" + text + "'");
  return FieldElement::fraction(parse_poly(p, num), d);
}

FieldElement coerce(const FieldElement& x, const FieldDesc& field) {
  if (x.field() == field) return x;
  if (x.is_rational() && !field.is_rationals()) {
    std::uint32_t p = field.characteristic();
    std::uint32_t den = mod_u32(x.rational().den, p);
    if (den == 0) {
      throw std::domain_error("literal " + x.to_string() + " is undefined in characteristic " +
                              std::to_string(p));
    }
    return FieldElement::fraction(FpPoly::constant(p, mod_u32(x.rational().num, p)),
                                  FpPoly::constant(p, den));
  }
  throw std::invalid_argument("cannot map " + x.to_string() + " into " + field.name());
}

bool field_sqrt(const FieldElement& x, FieldElement& root) {
  if (x.is_rational()) {
    const auto& r = x.rational();
    if (r.num < 0) return false;
    if (!mpz_perfect_square_p(r.num.get_mpz_t()) || !mpz_perfect_square_p(r.den.get_mpz_t())) {
      return false;
    }
    root = FieldElement::fraction(sqrt(r.num), sqrt(r.den));
    return true;
  }
  const auto& f = x.rational_function();
  FpPoly a, b;
  if (!poly_sqrt(f.num, a) || !poly_sqrt(f.den, b)) return false;
  root = FieldElement::fraction(a, b);
  return true;
}

namespace {

// Solves r^2 + r*s = n over F_2[T] by linear algebra on coefficients of r.
bool solve_as_poly(const FpPoly& n, const FpPoly& s, FpPoly& r_out) {
  int bound = std::max(s.degree(), n.degree() < 0 ? 0 : (n.degree() + 1) / 2) + 1;
  int rows = std::max(2 * bound, bound + s.degree()) + 2;
  rows = std::max(rows, n.degree() + 1);
  // Column j is the image of T^j.
  std::vector<std::vector<std::uint8_t>> m(rows, std::vector<std::uint8_t>(bound + 1, 0));
  for (int j = 0; j < bound; ++j) {
    FpPoly basis = FpPoly::monomial(2, 1, j);
    FpPoly img = basis * basis + basis * s;
    for (int i = 0; i <= img.degree(); ++i) {
      if (i >= rows) return false;
      m[i][j] = static_cast<std::uint8_t>(img.coeff(i));
    }
  }
  for (int i = 0; i < rows; ++i) m[i][bound] = static_cast<std::uint8_t>(n.coeff(i));
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < bound && row < rows; ++col) {
    int sel = -1;
    for (int i = row; i < rows; ++i) {
      if (m[i][col]) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(m[sel], m[row]);
    for (int i = 0; i < rows; ++i) {
      if (i != row && m[i][col]) {
        for (int k = col; k <= bound; ++k) m[i][k] ^= m[row][k];
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int i = row; i < rows; ++i) {
    if (m[i][bound]) return false;
  }
  std::vector<std::uint32_t> r(bound, 0);
  for (int i = 0; i < row; ++i) r[pivot_col[i]] = m[i][bound];
  r_out = FpPoly(2, r);
  return true;
}

}  // namespace

std::vector<FieldElement> solve_quadratic(const FieldElement& A, const FieldElement& B,
                                          const FieldElement& C) {
  std::vector<FieldElement> roots;
  FieldDesc field = A.field();
  if (A.is_zero()) {
    if (!B.is_zero()) roots.push_back(-C / B);
    return roots;
  }
  if (!field.is_rationals() && field.characteristic() == 2) {
    if (B.is_zero()) {
      FieldElement r;
      if (field_sqrt(C / A, r)) roots.push_back(r);
      return roots;
    }
    // y = (B/A) w with w^2 + w = CA/B^2.
    FieldElement c = C * A / (B * B);
    const auto& f = c.rational_function();
    FpPoly s;
    if (!poly_sqrt(f.den, s)) return roots;
    FpPoly r;
    if (!solve_as_poly(f.num, s, r)) return roots;
    FieldElement w = FieldElement::fraction(r, s);
    FieldElement scale = B / A;
    roots.push_back(scale * w);
    roots.push_back(scale * (w + FieldElement(field, 1)));
    return roots;
  }
  FieldElement disc = B * B - FieldElement(field, 4) * A * C, d;
  if (!field_sqrt(disc, d)) return roots;
  FieldElement two_a = FieldElement(field, 2) * A;
  roots.push_back((-B + d) / two_a);
  if (!d.is_zero()) roots.push_back((-B - d) / two_a);
  return roots;
}

}  // namespace univdef
