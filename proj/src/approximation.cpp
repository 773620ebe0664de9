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
#include "univdef/approximation.hpp"

#include <algorithm>
#include <stdexcept>

namespace univdef {
namespace {

FieldElement rational_approximation(const std::vector<ApproximationTarget>& targets) {
  Integer D = 1;
  std::vector<int> e(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    int val = valuation(targets[i].value, targets[i].place);
    e[i] = (val == kInfiniteValuation || val >= 0) ? 0 : -val;
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), targets[i].place.prime_number().get_mpz_t(), e[i]);
    D *= pe;
  }
  Integer y = 0, M = 1;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    int k = std::max(0, targets[i].gamma + 1 + e[i]);
    if (k == 0) continue;
    Integer m;
    mpz_pow_ui(m.get_mpz_t(), targets[i].place.prime_number().get_mpz_t(), k);
    FieldElement scaled = targets[i].value * FieldElement(FieldDesc::rationals(), D);
    Integer r = mod_floor(scaled.rational().num * inverse_mod(scaled.rational().den, m), m);
    // Combine y mod M with r mod m.
    Integer t = mod_floor((r - y) * inverse_mod(M, m), m);
    y += M * t;
    M *= m;
    y = mod_floor(y, M);
  }
  return FieldElement::fraction(y, D);
}

FieldElement function_approximation(const FieldDesc& field,
                                    const std::vector<ApproximationTarget>& targets) {
  const std::uint32_t p = field.characteristic();
  FpPoly D = FpPoly::constant(p, 1), M = FpPoly::constant(p, 1), y = FpPoly::zero(p);
  const ApproximationTarget* at_infinity = nullptr;
  for (const auto& t : targets) {
    if (t.place.is_infinite()) {
      at_infinity = &t;
      continue;
    }
    int val = valuation(t.value, t.place);
    if (val < 0 && val != kInfiniteValuation) D = D * poly_pow(t.place.polynomial(), -val);
  }
  FieldElement Delem = FieldElement::polynomial(D);
  for (const auto& t : targets) {
    if (t.place.is_infinite()) continue;
    int val = valuation(t.value, t.place);
    int e = (val < 0 && val != kInfiniteValuation) ? -val : 0;
    int k = std::max(0, t.gamma + 1 + e);
    if (k == 0) continue;
    FpPoly m = poly_pow(t.place.polynomial(), k);
    FieldElement scaled = t.value * Delem;
    const auto& f = scaled.rational_function();
    FpPoly r = (f.num * inverse_mod(f.den, m)) % m;
    FpPoly tt = ((r - y) * inverse_mod(M, m)) % m;
    y = y + M * tt;
    M = M * m;
    y = y % M;
  }
  FieldElement x0 = FieldElement::fraction(y, D);
  if (!at_infinity) return x0;
  // Correct at the degree place with x = x0 + M z / (D Q^s); Q avoids every target.
  PlaceSet used;
  for (const auto& t : targets) used.insert(t.place);
  used.insert(Place::degree_place(p));
  FpPoly Q = smallest_place_outside(field, used).polynomial();
  int need = at_infinity->gamma - D.degree() + M.degree();
  int s = 0;
  if (need >= 0) s = need / Q.degree() + 1;
  FpPoly Qs = poly_pow(Q, s);
  FieldElement g = (at_infinity->value - x0) * FieldElement::fraction(D * Qs, M);
  const auto& gf = g.rational_function();
  FieldElement z = FieldElement::polynomial(gf.num / gf.den);
  return x0 + FieldElement::fraction(M, D * Qs) * z;
}

}  // namespace

FieldElement weak_approximate(const FieldDesc& field, const std::vector<ApproximationTarget>& targets) {
  PlaceSet seen;
  for (const auto& t : targets) {
    if (t.place.field() != field || t.value.field() != field) {
      throw std::invalid_argument("weak_approximate: target outside " + field.name());
    }
    if (!seen.insert(t.place).second) {
      throw std::invalid_argument("weak_approximate: duplicate place " + t.place.to_string());
    }
  }
  if (targets.empty()) return FieldElement(field, 0);
  bool all_equal = std::all_of(targets.begin(), targets.end(),
                               [&](const auto& t) { return t.value == targets[0].value; });
  if (all_equal) return targets[0].value;
  FieldElement x = field.is_rationals() ? rational_approximation(targets)
                                        : function_approximation(field, targets);
  for (const auto& t : targets) {
    int val = valuation(x - t.value, t.place);
    if (val != kInfiniteValuation && val <= t.gamma) {
      throw std::logic_error("weak_approximate: internal check failed at " + t.place.to_string());
    }
  }
  return x;
}

std::vector<FieldElement> enumerate_by_height(const FieldDesc& field, int H) {
  if (H < 0) throw std::invalid_argument("enumerate_by_height: negative bound");
  std::vector<FieldElement> out;
  if (field.is_rationals()) {
    out.emplace_back(field, 0);
    for (long d = 1; d <= H; ++d) {
      for (long n = 1; n <= H; ++n) {
        Integer g;
        mpz_gcd_ui(g.get_mpz_t(), Integer(n).get_mpz_t(), static_cast<unsigned long>(d));
        if (g != 1) continue;
        out.push_back(FieldElement::fraction(Integer(n), Integer(d)));
        out.push_back(FieldElement::fraction(Integer(-n), Integer(d)));
      }
    }
  } else {
    const std::uint32_t p = field.characteristic();
    std::uint64_t count = 1;
    for (int i = 0; i <= H; ++i) {
      count *= p;
      if (count > (1ULL << 26)) throw std::invalid_argument("enumerate_by_height: bound too large");
    }
    std::vector<FpPoly> dens;
    std::uint64_t monic_limit = 1;
    for (int deg = 0; deg <= H; ++deg) {
      for (std::uint64_t i = 0; i < monic_limit; ++i) {
        dens.push_back(FpPoly::from_index(p, i) + FpPoly::monomial(p, 1, deg));
      }
      monic_limit *= p;
    }
    out.emplace_back(field, 0);
    for (const FpPoly& den : dens) {
      for (std::uint64_t i = 1; i < count; ++i) {
        FpPoly num = FpPoly::from_index(p, i);
        if (!gcd(num, den).is_one()) continue;
        out.push_back(FieldElement::fraction(num, den));
      }
    }
  }
  std::sort(out.begin(), out.end(), height_less);
  return out;
}

FieldElement random_element(const FieldDesc& field, int H, std::mt19937_64& rng) {
  if (field.is_rationals()) {
    std::uniform_int_distribution<long> num(-H, H), den(1, std::max(1, H));
    return FieldElement::fraction(Integer(num(rng)), Integer(den(rng)));
  }
  const std::uint32_t p = field.characteristic();
  std::uniform_int_distribution<int> deg(0, H);
  auto random_poly = [&](int d, bool monic) {
    std::vector<std::uint32_t> c(d + 1);
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % p);
    if (monic) c[d] = 1;
    return FpPoly(p, c);
  };
  FpPoly den = random_poly(deg(rng), true);
  return FieldElement::fraction(random_poly(deg(rng), false), den);
}

}  // namespace univdef
