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
#include "univdef/integer.hpp"

#include <algorithm>
#include <stdexcept>

namespace univdef {
namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long seed = 1;; ++seed) {
    Integer y = seed + 1, c = seed, m = 64, g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) y = f(y);
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (Integer i = 0; i < std::min(m, Integer(r - k)); ++i) {
          y = f(y);
          Integer diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(Integer(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

int remove_factor(Integer& n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("remove_factor: zero");
  return static_cast<int>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n_in) {
  if (n_in == 0) throw std::invalid_argument("factor_integer: zero");
  Integer n = abs(n_in);
  std::vector<std::pair<Integer, int>> result;
  for (unsigned long p = 2; p < 2000 && n > 1; ++p) {
    if (n % p != 0) continue;
    int e = remove_factor(n, Integer(p));
    result.emplace_back(Integer(p), e);
  }
  std::vector<Integer> rest;
  factor_into(n, rest);
  std::sort(rest.begin(), rest.end());
  for (const Integer& q : rest) {
    if (!result.empty() && result.back().first == q) {
      ++result.back().second;
    } else {
      result.emplace_back(q, 1);
    }
  }
  return result;
}

Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("inverse_mod: not invertible");
  }
  return r;
}

std::uint32_t mod_u32(const Integer& a, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(a.get_mpz_t(), p));
}

Integer parse_integer(const std::string& text) {
  Integer r;
  std::string t = text;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty() || r.set_str(t, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return r;
}

}  // namespace univdef
