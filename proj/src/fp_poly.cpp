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
#include "univdef/fp_poly.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <stdexcept>

namespace univdef {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("inv_mod: zero divisor");
  return pow_mod(a, p - 2, p);
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw std::invalid_argument("FpPoly: bad characteristic");
  for (auto& x : c_) x %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint32_t p, std::uint64_t c) {
  return FpPoly(p, {static_cast<std::uint32_t>(c % p)});
}

FpPoly FpPoly::monomial(std::uint32_t p, std::uint32_t c, int k) {
  std::vector<std::uint32_t> v(k + 1, 0);
  v[k] = c;
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::from_index(std::uint32_t p, std::uint64_t idx) {
  std::vector<std::uint32_t> v;
  while (idx) {
    v.push_back(static_cast<std::uint32_t>(idx % p));
    idx /= p;
  }
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(leading(), p_));
}

FpPoly FpPoly::scaled(std::uint32_t s) const {
  std::vector<std::uint32_t> v(c_);
  for (auto& x : v) x = mul_mod(x, s % p_, p_);
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::derivative() const {
  std::vector<std::uint32_t> v;
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(mul_mod(c_[i], i % p_, p_));
  return FpPoly(p_, std::move(v));
}

std::uint32_t FpPoly::eval(std::uint32_t x) const {
  std::uint32_t r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = (mul_mod(r, x, p_) + c_[i]) % p_;
  return r;
}

static void check_same(const FpPoly& a, const FpPoly& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("FpPoly: characteristic mismatch");
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  check_same(a, b);
  std::vector<std::uint32_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
  return FpPoly(a.p_, std::move(v));
}

FpPoly FpPoly::operator-() const {
  std::vector<std::uint32_t> v(c_);
  for (auto& x : v) x = (p_ - x) % p_;
  return FpPoly(p_, std::move(v));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p_);
  const std::uint64_t p = a.p_;
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (!a.c_[i]) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a.c_[i]) * b.c_[j]) % p;
    }
  }
  std::vector<std::uint32_t> v(acc.begin(), acc.end());
  return FpPoly(a.p_, std::move(v));
}

void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  check_same(a, b);
  if (b.is_zero()) throw std::domain_error("FpPoly: division by zero");
  const std::uint32_t p = a.prime();
  std::vector<std::uint32_t> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) {
    q = FpPoly::zero(p);
    r = a;
    return;
  }
  std::vector<std::uint32_t> quo(a.degree() - db + 1, 0);
  std::uint32_t inv = inv_mod(b.leading(), p);
  for (int i = a.degree(); i >= db; --i) {
    std::uint32_t c = mul_mod(rem[i], inv, p);
    if (!c) continue;
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) {
      rem[i - db + j] = (rem[i - db + j] + p - mul_mod(c, b.coeff(j), p)) % p;
    }
  }
  q = FpPoly(p, std::move(quo));
  rem.resize(db);
  r = FpPoly(p, std::move(rem));
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  divmod(a, b, q, r);
  return q;
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  divmod(a, b, q, r);
  return r;
}

bool operator<(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

std::string FpPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    std::uint32_t c = c_[i];
    if (!c) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t) {
  const std::uint32_t p = a.prime();
  FpPoly r0 = a, r1 = b, s0 = FpPoly::constant(p, 1), s1 = FpPoly::zero(p),
         t0 = FpPoly::zero(p), t1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    FpPoly q, r;
    divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = s0;
    t = t0;
    return r0;
  }
  std::uint32_t inv = inv_mod(r0.leading(), p);
  s = s0.scaled(inv);
  t = t0.scaled(inv);
  return r0.scaled(inv);
}

FpPoly pow_mod(const FpPoly& base, const Integer& e, const FpPoly& m) {
  FpPoly result = FpPoly::constant(base.prime(), 1) % m;
  FpPoly b = base % m;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

FpPoly poly_pow(const FpPoly& base, int e) {
  if (e < 0) throw std::invalid_argument("poly_pow: negative exponent");
  FpPoly r = FpPoly::constant(base.prime(), 1), b = base;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FpPoly inverse_mod(const FpPoly& a, const FpPoly& m) {
  FpPoly s, t;
  FpPoly g = xgcd(a % m, m, s, t);
  if (!g.is_one()) throw std::domain_error("FpPoly inverse_mod: not invertible");
  return s % m;
}

namespace {

FpPoly pth_root(const FpPoly& f) {
  const std::uint32_t p = f.prime();
  std::vector<std::uint32_t> v;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(f.coeff(i));
  return FpPoly(p, std::move(v));
}

void squarefree(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  if (f.degree() <= 0) return;
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one() && c.degree() > 0) {
    squarefree(pth_root(c.monic()), mult * static_cast<int>(f.prime()), out);
  }
}

Integer field_size(std::uint32_t p, int d) {
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, d);
  return q;
}

// Splits a squarefree monic product of degree-d irreducibles.
void equal_degree(const FpPoly& g, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const std::uint32_t p = g.prime();
  Integer q = field_size(p, d);
  while (true) {
    std::vector<std::uint32_t> coeffs(g.degree());
    for (auto& x : coeffs) x = static_cast<std::uint32_t>(rng() % p);
    FpPoly a(p, coeffs);
    if (a.degree() <= 0) continue;
    FpPoly b;
    if (p == 2) {
      FpPoly term = a % g;
      b = term;
      for (int i = 1; i < d; ++i) {
        term = (term * term) % g;
        b = b + term;
      }
    } else {
      b = pow_mod(a, Integer((q - 1) / 2), g) - FpPoly::constant(p, 1);
    }
    FpPoly u = gcd(g, b);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree(u, d, rng, out);
      equal_degree(g / u, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor_poly(const FpPoly& f_in) {
  if (f_in.is_zero()) throw std::invalid_argument("factor_poly: zero");
  std::vector<std::pair<FpPoly, int>> sqf;
  squarefree(f_in.monic(), 1, sqf);
  const std::uint32_t p = f_in.prime();
  std::mt19937_64 rng(0x5eedULL);
  std::vector<std::pair<FpPoly, int>> result;
  for (auto& [g0, mult] : sqf) {
    FpPoly g = g0;
    FpPoly x = FpPoly::variable(p);
    FpPoly h = x % g;
    Integer pp = p;
    for (int d = 1; g.degree() >= 2 * d; ++d) {
      h = pow_mod(h, pp, g);
      FpPoly part = gcd(g, h - x);
      if (part.degree() > 0) {
        std::vector<FpPoly> pieces;
        equal_degree(part, d, rng, pieces);
        for (auto& piece : pieces) result.emplace_back(piece, mult);
        g = g / part;
        h = h % g;
      }
    }
    if (g.degree() > 0) result.emplace_back(g.monic(), mult);
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Merge equal factors arising from different squarefree layers.
  std::vector<std::pair<FpPoly, int>> merged;
  for (auto& e : result) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() <= 0) return false;
  auto fac = factor_poly(f);
  return fac.size() == 1 && fac[0].second == 1;
}

int poly_valuation(FpPoly f, const FpPoly& P) {
  if (f.is_zero()) throw std::invalid_argument("poly_valuation: zero");
  int k = 0;
  while (true) {
    FpPoly q, r;
    divmod(f, P, q, r);
    if (!r.is_zero()) return k;
    f = std::move(q);
    ++k;
  }
}

bool poly_sqrt(const FpPoly& f, FpPoly& root) {
  const std::uint32_t p = f.prime();
  if (f.is_zero()) {
    root = f;
    return true;
  }
  if (f.degree() % 2) return false;
  if (p == 2) {
    std::vector<std::uint32_t> v;
    for (int i = 0; i <= f.degree(); ++i) {
      if (i % 2) {
        if (f.coeff(i)) return false;
      } else {
        v.push_back(f.coeff(i));
      }
    }
    root = FpPoly(2, std::move(v));
    return true;
  }
  // Leading coefficient must be a square in F_p.
  std::uint32_t lc = f.leading(), s = 0;
  bool found = false;
  for (std::uint32_t x = 1; x < p; ++x) {
    if (mul_mod(x, x, p) == lc) {
      s = x;
      found = true;
      break;
    }
  }
  if (!found) return false;
  int n = f.degree() / 2;
  std::vector<std::uint32_t> r(n + 1, 0);
  r[n] = s;
  std::uint32_t inv2s = inv_mod(mul_mod(2, s, p), p);
  // Top-down: coefficient of T^{n+k} in r^2 determines r[k].
  for (int k = n - 1; k >= 0; --k) {
    std::uint64_t acc = 0;
    for (int i = k + 1; i <= n; ++i) {
      int j = n + k - i;
      if (j > k && j <= n) acc += mul_mod(r[i], r[j], p);
    }
    std::uint32_t target = f.coeff(n + k);
    std::uint32_t val = static_cast<std::uint32_t>((target + p - acc % p) % p);
    r[k] = mul_mod(val, inv2s, p);
  }
  FpPoly cand(p, r);
  if (cand * cand != f) return false;
  root = cand;
  return true;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::uint32_t p, const std::string& text) : p_(p), text_(text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
    }
  }

  FpPoly run() {
    if (s_.empty()) fail("empty");
    FpPoly r = expr();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("bad polynomial '" + text_ + "': " + why);
  }
  bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }

  FpPoly expr() {
    FpPoly r = term();
    while (peek('+') || peek('-')) {
      bool minus = s_[i_++] == '-';
      FpPoly t = term();
      r = minus ? r - t : r + t;
    }
    return r;
  }
  FpPoly term() {
    FpPoly r = unary();
    while (peek('*')) {
      ++i_;
      r = r * unary();
    }
    return r;
  }
  FpPoly unary() {
    if (peek('-')) {
      ++i_;
      return -unary();
    }
    if (peek('+')) {
      ++i_;
      return unary();
    }
    return power();
  }
  FpPoly power() {
    FpPoly base = atom();
    if (peek('^')) {
      ++i_;
      std::size_t start = i_;
      long e = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        e = e * 10 + (s_[i_++] - '0');
        if (e > 100000) fail("exponent too large");
      }
      if (i_ == start) fail("missing exponent");
      return poly_pow(base, static_cast<int>(e));
    }
    return base;
  }
  FpPoly atom() {
    if (peek('(')) {
      ++i_;
      FpPoly r = expr();
      if (!peek(')')) fail("missing )");
      ++i_;
      return r;
    }
    if (peek('T') || peek('t')) {
      ++i_;
      return FpPoly::variable(p_);
    }
    std::size_t start = i_;
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = (v * 10 + static_cast<std::uint64_t>(s_[i_++] - '0')) % p_;
    }
    if (i_ == start) fail(i_ < s_.size() ? "unexpected '" + std::string(1, s_[i_]) + "'" : "expected term");
    return FpPoly::constant(p_, v);
  }

  std::uint32_t p_;
  std::string text_, s_;
  std::size_t i_ = 0;
};

}  // namespace

FpPoly parse_poly(std::uint32_t p, const std::string& text) { return PolyParser(p, text).run(); }

}  // namespace univdef
