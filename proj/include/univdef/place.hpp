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

#include <climits>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "univdef/field.hpp"

namespace univdef {

// Valuation of zero.
inline constexpr int kInfiniteValuation = INT_MAX;

class Place {
 public:
  static Place prime(const Integer& p);
  static Place irreducible(const FpPoly& P);  // monic irreducible
  static Place degree_place(std::uint32_t p);
  // "q:<prime>", "f:<monic poly>", "inf".
  static Place parse(const FieldDesc& field, const std::string& text);

  FieldDesc field() const;
  bool is_infinite() const { return kind_ == Kind::kInfinite; }
  const Integer& prime_number() const { return prime_; }
  const FpPoly& polynomial() const { return poly_; }
  int degree() const;
  Integer residue_size() const;
  // prime, monic irreducible, or 1/T.
  FieldElement uniformizer() const;
  std::string to_string() const;

  friend bool operator<(const Place& a, const Place& b);
  friend bool operator==(const Place& a, const Place& b);
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }

 private:
  enum class Kind { kRationalPrime, kFinite, kInfinite };
  Kind kind_ = Kind::kRationalPrime;
  Integer prime_;
  FpPoly poly_;
  std::uint32_t p_ = 0;
};

using PlaceSet = std::set<Place>;

int valuation(const FieldElement& x, const Place& v);
PlaceSet support(const FieldElement& x);

// The n smallest places of the field in the canonical order.
std::vector<Place> first_places(const FieldDesc& field, std::size_t n);
// Smallest place not in `excluded`.
Place smallest_place_outside(const FieldDesc& field, const PlaceSet& excluded);

PlaceSet parse_place_set(const FieldDesc& field, const std::string& text);
std::string to_string(const PlaceSet& s);

struct ResidueElement {
  // Integer in [0, p) for Q; reduced polynomial for F_p(T).
  std::variant<Integer, FpPoly> value;
  friend bool operator==(const ResidueElement& a, const ResidueElement& b) {
    return a.value == b.value;
  }
  std::string to_string() const;
};

// O_v / m_v for a fixed place.
class ResidueField {
 public:
  explicit ResidueField(const Place& v);

  const Place& place() const { return place_; }
  const Integer& size() const { return size_; }
  std::uint32_t characteristic_small() const;  // function fields only

  ResidueElement reduce(const FieldElement& x) const;  // throws if not integral
  FieldElement lift(const ResidueElement& r) const;
  // Element with index i in the canonical enumeration, 0 <= i < size.
  ResidueElement element(std::uint64_t i) const;

  ResidueElement add(const ResidueElement& a, const ResidueElement& b) const;
  ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const;
  bool is_zero(const ResidueElement& a) const;
  // 1 square, -1 nonsquare, 0 zero. Odd characteristic only.
  int quadratic_character(const ResidueElement& a) const;
  // Absolute trace to F_2. Characteristic 2 only.
  int trace2(const ResidueElement& a) const;
  // Whether X^2 - X - a has no root in the residue field.
  bool artin_schreier_irreducible(const ResidueElement& a) const;

 private:
  FpPoly modulus() const;
  Place place_;
  Integer size_;
};

ResidueElement reduce(const FieldElement& x, const Place& v);

}  // namespace univdef
