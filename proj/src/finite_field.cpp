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
#include "univdef/finite_field.hpp"

#include <stdexcept>

namespace univdef {

FiniteField::FiniteField(std::uint32_t q) : q_(q), p_(0), k_(0), modulus_(FpPoly::zero(2)) {
  if (q < 2 || q > kMaxOrder) throw std::invalid_argument("finite field order out of range: " + std::to_string(q));
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t r = q;
  int k = 0;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  p_ = p;
  k_ = k;
  // First monic irreducible of degree k in index order.
  std::uint64_t base = 1;
  for (int i = 0; i < k; ++i) base *= p;
  modulus_ = FpPoly::from_index(p, base);
  if (k > 1) {
    for (std::uint64_t idx = base; idx < 2 * base; ++idx) {
      FpPoly f = FpPoly::from_index(p, idx);
      if (is_irreducible(f)) {
        modulus_ = f;
        break;
      }
    }
  }
  auto to_index = [&](const FpPoly& f) {
    std::uint32_t idx = 0;
    for (int i = f.degree(); i >= 0; --i) idx = idx * p + f.coeff(i);
    return idx;
  };
  std::vector<FpPoly> elems;
  elems.reserve(q);
  for (std::uint32_t i = 0; i < q; ++i) elems.push_back(FpPoly::from_index(p, i));
  add_.resize(std::size_t(q) * q);
  mul_.resize(std::size_t(q) * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    neg_[a] = to_index(-elems[a]);
    for (std::uint32_t b = 0; b < q; ++b) {
      add_[a * q + b] = to_index(elems[a] + elems[b]);
      std::uint32_t m = k == 1 ? static_cast<std::uint32_t>((std::uint64_t(a) * b) % p) : to_index((elems[a] * elems[b]) % modulus_);
      mul_[a * q + b] = m;
      if (m == 1) inv_[a] = b;
    }
  }
}

FiniteField FiniteField::parse(const std::string& text) {
  std::string t = text;
  if (t.rfind("GF(", 0) == 0 && t.back() == ')') {
    t = t.substr(3, t.size() - 4);
  } else if (!t.empty() && (t[0] == 'F' || t[0] == 'f')) {
    t = t.substr(1);
  } else {
    throw std::invalid_argument("not a finite field: " + text);
  }
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a finite field: " + text);
  }
  return FiniteField(static_cast<std::uint32_t>(std::stoul(t)));
}

std::string FiniteField::name() const { return "F" + std::to_string(q_); }

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  return inv_[a];
}

std::uint32_t FiniteField::from_integer(long n) const {
  long r = n % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t FiniteField::from_constant(const FieldElement& x) const {
  if (!x.is_rational()) {
    if (x.field().characteristic() != p_) throw std::domain_error("constant " + x.to_string() + " not in " + name());
    const auto& rf = x.rational_function();
    if (rf.num.degree() > 0 || rf.den.degree() > 0) {
      throw std::domain_error("constant " + x.to_string() + " is not in the prime field of " + name());
    }
    return mul(rf.num.coeff(0), inv(rf.den.coeff(0)));
  }
  std::uint32_t n = mod_u32(x.rational().num, p_);
  std::uint32_t d = mod_u32(x.rational().den, p_);
  if (d == 0) throw std::domain_error("constant " + x.to_string() + " has denominator divisible by " + std::to_string(p_));
  return mul(n, inv(d));
}

std::string FiniteField::element_name(std::uint32_t a) const {
  if (k_ == 1) return std::to_string(a);
  FpPoly f = FpPoly::from_index(p_, a);
  std::string s = f.to_string();
  for (char& c : s) {
    if (c == 'T') c = 'g';
  }
  return s;
}

std::vector<long> root_free_polynomial(const FiniteField& f) {
  std::uint32_t p = f.characteristic();
  for (int d = 2; d <= 8; ++d) {
    if (f.degree() % d == 0) continue;
    std::uint64_t base = 1;
    for (int i = 0; i < d; ++i) base *= p;
    for (std::uint64_t idx = base; idx < 2 * base; ++idx) {
      FpPoly g = FpPoly::from_index(p, idx);
      if (!is_irreducible(g)) continue;
      std::vector<long> out;
      for (int i = 0; i <= g.degree(); ++i) out.push_back(g.coeff(i));
      return out;
    }
  }
  throw std::logic_error("no root-free polynomial found");
}

}  // namespace univdef
