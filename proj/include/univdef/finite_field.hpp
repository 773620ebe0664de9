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
#include <vector>

#include "univdef/field.hpp"
#include "univdef/fp_poly.hpp"

namespace univdef {

// GF(q) by lookup tables; element i is the polynomial with base-p digits of i
// modulo a fixed irreducible.
class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1024;

  explicit FiniteField(std::uint32_t q);
  // "F9", "GF(9)".
  static FiniteField parse(const std::string& text);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  int degree() const { return k_; }
  const FpPoly& modulus() const { return modulus_; }
  std::string name() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t inv(std::uint32_t a) const;
  // Rational constants only; throws when the denominator vanishes mod p.
  std::uint32_t from_constant(const FieldElement& x) const;
  std::uint32_t from_integer(long n) const;
  std::string element_name(std::uint32_t a) const;

 private:
  std::uint32_t q_, p_;
  int k_;
  FpPoly modulus_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

// Monic polynomial over F_p of degree >= 2 without roots in GF(q), as integer
// coefficients low to high.
std::vector<long> root_free_polynomial(const FiniteField& f);

}  // namespace univdef
