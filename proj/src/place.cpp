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
#include "univdef/place.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace univdef {

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
  Place v;
  v.kind_ = Kind::kRationalPrime;
  v.prime_ = p;
  return v;
}

Place Place::irreducible(const FpPoly& P) {
  if (!P.is_monic() || !is_irreducible(P)) {
    throw std::invalid_argument("not a monic irreducible: " + P.to_string());
  }
  Place v;
  v.kind_ = Kind::kFinite;
  v.poly_ = P;
  v.p_ = P.prime();
  return v;
}

Place Place::degree_place(std::uint32_t p) {
  Place v;
  v.kind_ = Kind::kInfinite;
  v.p_ = p;
  return v;
}

Place Place::parse(const FieldDesc& field, const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (field.is_rationals()) {
    if (t.rfind("q:", 0) != 0) throw std::invalid_argument("bad place '" + text + "' for Q");
    return prime(parse_integer(t.substr(2)));
  }
  if (t == "inf") return degree_place(field.characteristic());
  if (t.rfind("f:", 0) != 0) throw std::invalid_argument("bad place '" + text + "' for " + field.name());
  return irreducible(parse_poly(field.characteristic(), t.substr(2)));
}

FieldDesc Place::field() const {
  if (kind_ == Kind::kRationalPrime) return FieldDesc::rationals();
  return FieldDesc::function_field(p_);
}

int Place::degree() const { return kind_ == Kind::kFinite ? poly_.degree() : 1; }

Integer Place::residue_size() const {
  if (kind_ == Kind::kRationalPrime) return prime_;
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p_, degree());
  return q;
}

FieldElement Place::uniformizer() const {
  switch (kind_) {
    case Kind::kRationalPrime:
      return FieldElement(FieldDesc::rationals(), prime_);
    case Kind::kFinite:
      return FieldElement::polynomial(poly_);
    case Kind::kInfinite:
      return FieldElement::generator(field()).inverse();
  }
  return {};
}

std::string Place::to_string() const {
  switch (kind_) {
    case Kind::kRationalPrime:
      return "q:" + prime_.get_str();
    case Kind::kFinite:
      return "f:" + poly_.to_string();
    case Kind::kInfinite:
      return "inf";
  }
  return "";
}

bool operator<(const Place& a, const Place& b) {
  if (a.p_ != b.p_) return a.p_ < b.p_;
  if (a.kind_ != b.kind_) {
    if (a.kind_ == Place::Kind::kInfinite) return true;
    if (b.kind_ == Place::Kind::kInfinite) return false;
  }
  if (a.kind_ == Place::Kind::kRationalPrime) return a.prime_ < b.prime_;
  if (a.kind_ == Place::Kind::kInfinite) return false;
  return a.poly_ < b.poly_;
}

bool operator==(const Place& a, const Place& b) {
  if (a.kind_ != b.kind_ || a.p_ != b.p_) return false;
  if (a.kind_ == Place::Kind::kRationalPrime) return a.prime_ == b.prime_;
  if (a.kind_ == Place::Kind::kFinite) return a.poly_ == b.poly_;
  return true;
}

int valuation(const FieldElement& x, const Place& v) {
  if (x.is_zero()) return kInfiniteValuation;
  if (x.is_rational() != v.field().is_rationals()) {
    throw std::invalid_argument("place " + v.to_string() + " does not belong to " + x.field().name());
  }
  if (x.is_rational()) {
    Integer n = x.rational().num, d = x.rational().den;
    int a = remove_factor(n, v.prime_number());
    int b = remove_factor(d, v.prime_number());
    return a - b;
  }
  const auto& f = x.rational_function();
  if (f.num.prime() != v.field().characteristic()) throw std::invalid_argument("characteristic mismatch");
  if (v.is_infinite()) return f.den.degree() - f.num.degree();
  return poly_valuation(f.num, v.polynomial()) - poly_valuation(f.den, v.polynomial());
}

PlaceSet support(const FieldElement& x) {
  if (x.is_zero()) throw std::invalid_argument("support of zero");
  PlaceSet s;
  if (x.is_rational()) {
    for (auto& [p, e] : factor_integer(x.rational().num)) s.insert(Place::prime(p));
    for (auto& [p, e] : factor_integer(x.rational().den)) s.insert(Place::prime(p));
    return s;
  }
  const auto& f = x.rational_function();
  auto add_factors = [&](const FpPoly& g) {
    if (g.degree() <= 0) return;
    for (auto& [P, e] : factor_poly(g)) s.insert(Place::irreducible(P));
  };
  add_factors(f.num);
  add_factors(f.den);
  if (f.num.degree() != f.den.degree()) s.insert(Place::degree_place(f.num.prime()));
  return s;
}

namespace {

class PlaceStream {
 public:
  explicit PlaceStream(const FieldDesc& field) : field_(field) {}
  Place next() {
    if (field_.is_rationals()) {
      prime_ = next_prime(prime_);
      return Place::prime(prime_);
    }
    std::uint32_t p = field_.characteristic();
    if (!emitted_infinity_) {
      emitted_infinity_ = true;
      return Place::degree_place(p);
    }
    while (true) {
      // Monic polynomials of each degree, in coefficient order.
      std::uint64_t per_degree = 1;
      for (int i = 0; i < degree_; ++i) per_degree *= p;
      if (index_ >= per_degree) {
        ++degree_;
        index_ = 0;
        continue;
      }
      FpPoly f = FpPoly::from_index(p, index_++) + FpPoly::monomial(p, 1, degree_);
      if (f.degree() == degree_ && is_irreducible(f)) return Place::irreducible(f);
    }
  }

 private:
  FieldDesc field_;
  Integer prime_ = 1;
  bool emitted_infinity_ = false;
  int degree_ = 1;
  std::uint64_t index_ = 0;
};

}  // namespace

std::vector<Place> first_places(const FieldDesc& field, std::size_t n) {
  PlaceStream stream(field);
  std::vector<Place> out;
  while (out.size() < n) out.push_back(stream.next());
  return out;
}

Place smallest_place_outside(const FieldDesc& field, const PlaceSet& excluded) {
  PlaceStream stream(field);
  while (true) {
    Place v = stream.next();
    if (!excluded.count(v)) return v;
  }
}

PlaceSet parse_place_set(const FieldDesc& field, const std::string& text) {
  std::string t = text;
  auto b = t.find_first_not_of(" \t");
  auto e = t.find_last_not_of(" \t");
  if (b == std::string::npos) return {};
  t = t.substr(b, e - b + 1);
  if (!t.empty() && t.front() == '{') {
    if (t.back() != '}') throw std::invalid_argument("unbalanced place set '" + text + "'");
    t = t.substr(1, t.size() - 2);
  }
  PlaceSet s;
  std::size_t start = 0;
  while (start <= t.size()) {
    std::size_t comma = t.find(',', start);
    std::string item = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.find_first_not_of(" \t") != std::string::npos) s.insert(Place::parse(field, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

std::string to_string(const PlaceSet& s) {
  std::string out = "{";
  bool first = true;
  for (const Place& v : s) {
    if (!first) out += ", ";
    out += v.to_string();
    first = false;
  }
  return out + "}";
}

std::string ResidueElement::to_string() const {
  if (std::holds_alternative<Integer>(value)) return std::get<Integer>(value).get_str();
  return std::get<FpPoly>(value).to_string();
}

ResidueField::ResidueField(const Place& v) : place_(v), size_(v.residue_size()) {}

std::uint32_t ResidueField::characteristic_small() const { return place_.field().characteristic(); }

FpPoly ResidueField::modulus() const {
  if (place_.is_infinite()) return FpPoly::variable(characteristic_small());
  return place_.polynomial();
}

ResidueElement ResidueField::reduce(const FieldElement& x) const {
  int val = valuation(x, place_);
  if (val < 0) {
    throw std::domain_error("not integral at place " + place_.to_string() + ": " + x.to_string());
  }
  if (x.is_rational()) {
    const Integer& p = place_.prime_number();
    if (val > 0) return {Integer(0)};
    Integer r = mod_floor(x.rational().num * inverse_mod(x.rational().den, p), p);
    return {r};
  }
  const auto& f = x.rational_function();
  std::uint32_t p = f.num.prime();
  if (val > 0) return {FpPoly::zero(p)};
  if (place_.is_infinite()) {
    return {FpPoly::constant(p, mul_mod(f.num.leading(), inv_mod(f.den.leading(), p), p))};
  }
  const FpPoly& P = place_.polynomial();
  return {(f.num * inverse_mod(f.den, P)) % P};
}

FieldElement ResidueField::lift(const ResidueElement& r) const {
  if (std::holds_alternative<Integer>(r.value)) {
    return FieldElement(FieldDesc::rationals(), std::get<Integer>(r.value));
  }
  return FieldElement::polynomial(std::get<FpPoly>(r.value));
}

ResidueElement ResidueField::element(std::uint64_t i) const {
  if (place_.field().is_rationals()) return {Integer(static_cast<unsigned long>(i))};
  return {FpPoly::from_index(characteristic_small(), i)};
}

ResidueElement ResidueField::add(const ResidueElement& a, const ResidueElement& b) const {
  if (place_.field().is_rationals()) {
    return {mod_floor(std::get<Integer>(a.value) + std::get<Integer>(b.value), place_.prime_number())};
  }
  return {(std::get<FpPoly>(a.value) + std::get<FpPoly>(b.value)) % modulus()};
}

ResidueElement ResidueField::mul(const ResidueElement& a, const ResidueElement& b) const {
  if (place_.field().is_rationals()) {
    return {mod_floor(std::get<Integer>(a.value) * std::get<Integer>(b.value), place_.prime_number())};
  }
  return {(std::get<FpPoly>(a.value) * std::get<FpPoly>(b.value)) % modulus()};
}

bool ResidueField::is_zero(const ResidueElement& a) const {
  if (std::holds_alternative<Integer>(a.value)) return std::get<Integer>(a.value) == 0;
  return std::get<FpPoly>(a.value).is_zero();
}

int ResidueField::quadratic_character(const ResidueElement& a) const {
  if (is_zero(a)) return 0;
  if (place_.field().is_rationals()) {
    const Integer& p = place_.prime_number();
    if (p == 2) throw std::logic_error("quadratic character in characteristic 2");
    return mpz_jacobi(std::get<Integer>(a.value).get_mpz_t(), p.get_mpz_t());
  }
  std::uint32_t p = characteristic_small();
  if (p == 2) throw std::logic_error("quadratic character in characteristic 2");
  const FpPoly& x = std::get<FpPoly>(a.value);
  std::uint32_t norm;
  if (place_.is_infinite() || place_.degree() == 1) {
    FpPoly red = x % modulus();
    norm = red.coeff(0);
    if (!place_.is_infinite()) norm = red.coeff(0);
  } else {
    // Norm to F_p is x^{(q-1)/(p-1)}.
    Integer e = (size_ - 1) / (p - 1);
    FpPoly n = pow_mod(x, e, modulus());
    norm = n.coeff(0);
  }
  std::uint32_t leg = pow_mod(norm, (p - 1) / 2, p);
  return leg == 1 ? 1 : -1;
}

int ResidueField::trace2(const ResidueElement& a) const {
  if (place_.field().is_rationals()) {
    if (place_.prime_number() != 2) throw std::logic_error("trace2 needs characteristic 2");
    return std::get<Integer>(a.value) == 1 ? 1 : 0;
  }
  if (characteristic_small() != 2) throw std::logic_error("trace2 needs characteristic 2");
  FpPoly m = modulus();
  FpPoly term = std::get<FpPoly>(a.value) % m;
  FpPoly sum = term;
  for (int i = 1; i < place_.degree(); ++i) {
    term = (term * term) % m;
    sum = sum + term;
  }
  return static_cast<int>(sum.coeff(0));
}

bool ResidueField::artin_schreier_irreducible(const ResidueElement& a) const {
  bool char2 = place_.field().is_rationals() ? place_.prime_number() == 2 : characteristic_small() == 2;
  if (char2) return trace2(a) == 1;
  ResidueElement four = place_.field().is_rationals() ? ResidueElement{Integer(4)}
                                                      : ResidueElement{FpPoly::constant(characteristic_small(), 4)};
  ResidueElement one = place_.field().is_rationals() ? ResidueElement{Integer(1)}
                                                     : ResidueElement{FpPoly::constant(characteristic_small(), 1)};
  return quadratic_character(add(one, mul(four, a))) == -1;
}

ResidueElement reduce(const FieldElement& x, const Place& v) { return ResidueField(v).reduce(x); }

}  // namespace univdef
