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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace univdef {

using Integer = mpz_class;

bool is_prime(const Integer& n);

// Prime factorization of |n| with exponents, primes ascending. n != 0.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

// Strips all factors p from n, returning the multiplicity.
int remove_factor(Integer& n, const Integer& p);

Integer next_prime(const Integer& n);

// Least nonnegative residue.
Integer mod_floor(const Integer& a, const Integer& m);

Integer inverse_mod(const Integer& a, const Integer& m);

std::uint32_t mod_u32(const Integer& a, std::uint32_t p);

Integer parse_integer(const std::string& text);

}  // namespace univdef
