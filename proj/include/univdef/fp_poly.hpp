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
#include <utility>
#include <vector>

#include "univdef/integer.hpp"

namespace univdef {

// Dense polynomial over a prime field F_p, coefficients low to high, trimmed.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FpPoly zero(std::uint32_t p) { return FpPoly(p, {}); }
  static FpPoly constant(std::uint32_t p, std::uint64_t c);
  static FpPoly monomial(std::uint32_t p, std::uint32_t c, int k);
  static FpPoly variable(std::uint32_t p) { return monomial(p, 1, 1); }
  // Digits of idx in base p become coefficients, low to high.
  static FpPoly from_index(std::uint32_t p, std::uint64_t idx);

  std::uint32_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  std::uint32_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  FpPoly monic() const;
  FpPoly derivative() const;
  FpPoly scaled(std::uint32_t s) const;
  std::uint32_t eval(std::uint32_t x) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  FpPoly operator-() const;
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }
  // Degree first, then coefficients from the top down.
  friend bool operator<(const FpPoly& a, const FpPoly& b);

  std::string to_string(char var = 'T') const;

 private:
  void trim();
  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> c_;
};

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
FpPoly gcd(FpPoly a, FpPoly b);  // monic (or zero)
// Returns g = gcd(a, b) monic with s*a + t*b = g.
FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t);
FpPoly pow_mod(const FpPoly& base, const Integer& e, const FpPoly& m);
FpPoly inverse_mod(const FpPoly& a, const FpPoly& m);
FpPoly poly_pow(const FpPoly& base, int e);

bool is_irreducible(const FpPoly& f);
// Monic irreducible factors with multiplicity, sorted ascending. f != 0.
std::vector<std::pair<FpPoly, int>> factor_poly(const FpPoly& f);
// Multiplicity of the irreducible P in f (f != 0).
int poly_valuation(FpPoly f, const FpPoly& P);

// Square root of f if f is a square in F_p[T].
bool poly_sqrt(const FpPoly& f, FpPoly& root);

FpPoly parse_poly(std::uint32_t p, const std::string& text);

}  // namespace univdef
