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
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "univdef/fp_poly.hpp"
#include "univdef/integer.hpp"

namespace univdef {

class FieldDesc {
 public:
  enum class Family { kRationals, kRationalFunctions };

  FieldDesc() = default;
  static FieldDesc rationals() { return FieldDesc(); }
  static FieldDesc function_field(std::uint32_t p);
  // Accepts "Q" or "F<p>(T)".
  static FieldDesc parse(const std::string& text);

  Family family() const { return family_; }
  bool is_rationals() const { return family_ == Family::kRationals; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(const FieldDesc& a, const FieldDesc& b) {
    return a.family_ == b.family_ && a.p_ == b.p_;
  }
  friend bool operator!=(const FieldDesc& a, const FieldDesc& b) { return !(a == b); }

 private:
  Family family_ = Family::kRationals;
  std::uint32_t p_ = 0;
};

// Element of Q or F_p(T) in lowest terms: positive (resp. monic) denominator.
class FieldElement {
 public:
  struct Rational {
    Integer num, den;
  };
  struct RationalFunction {
    FpPoly num, den;
  };

  FieldElement() : value_(Rational{0, 1}) {}
  FieldElement(const FieldDesc& field, long n);
  FieldElement(const FieldDesc& field, const Integer& n);
  static FieldElement fraction(const Integer& num, const Integer& den);
  static FieldElement fraction(const FpPoly& num, const FpPoly& den);
  static FieldElement polynomial(const FpPoly& f);
  static FieldElement generator(const FieldDesc& field);  // T

  FieldDesc field() const;
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  const RationalFunction& rational_function() const;
  // Integer (Q) or polynomial (F_p(T)) element.
  bool is_integral() const;

  FieldElement inverse() const;
  FieldElement pow(long e) const;
  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  // max(|num|, |den|) for Q; max(deg num, deg den) for F_p(T).
  Integer height() const;
  int sign() const;  // Q only
  std::string to_string() const;

 private:
  std::variant<Rational, RationalFunction> value_;
};

// Deterministic total order: height first, then a fixed tie-break.
bool height_less(const FieldElement& a, const FieldElement& b);

FieldElement parse_element(const FieldDesc& field, const std::string& text);

// Maps a rational literal into `field` (reduction mod p for function fields).
FieldElement coerce(const FieldElement& x, const FieldDesc& field);

// Exact square root when x is a square in K.
bool field_sqrt(const FieldElement& x, FieldElement& root);
// Roots of A y^2 + B y + C = 0 in K (A, B, C not all zero; "all of K" is not reported).
std::vector<FieldElement> solve_quadratic(const FieldElement& A, const FieldElement& B,
                                          const FieldElement& C);

}  // namespace univdef
