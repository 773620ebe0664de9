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
#include "univdef/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "univdef/approximation.hpp"

namespace univdef {
namespace {

bool odd_set_ok(const FieldElement& pi, const PlaceSet& S) {
  if (pi.is_zero()) return false;
  PlaceSet odd = odd_neg(pi).odd;
  if (odd.size() % 2 == 0) return false;
  return std::includes(odd.begin(), odd.end(), S.begin(), S.end());
}

FieldElement product_of_generators(const FieldDesc& field, const PlaceSet& S) {
  FieldElement r(field, 1);
  for (const Place& v : S) r *= v.uniformizer();
  return r;
}

// Residue classes r at v with X^2 - X - f(r) irreducible, in enumeration order.
std::vector<ResidueElement> irreducible_residues(const Place& v, bool squared, std::size_t limit) {
  ResidueField k(v);
  std::vector<ResidueElement> out;
  Integer size = k.size();
  std::uint64_t n = size.fits_ulong_p() ? size.get_ui() : ~0ULL;
  for (std::uint64_t i = 1; i < n && out.size() < limit; ++i) {
    ResidueElement r = k.element(i);
    ResidueElement arg = squared ? k.mul(r, r) : r;
    if (k.artin_schreier_irreducible(arg)) out.push_back(r);
    if (i > 200000) break;
  }
  return out;
}

FieldElement lift_to(const ResidueField& k, const ResidueElement& r, const FieldDesc& field) {
  return coerce(k.lift(r), field);
}

FieldElement smallest_nonsquare_unit(const FieldDesc& field) {
  if (field.is_rationals()) return FieldElement(field, -1);
  std::uint32_t p = field.characteristic();
  for (std::uint32_t x = 2; x < p; ++x) {
    if (pow_mod(x, (p - 1) / 2, p) != 1) return FieldElement(field, static_cast<long>(x));
  }
  throw std::logic_error("no nonsquare unit");
}

// Search b with ramification_set([d, b)) == target, requiring odd v(b * scale)
// at every place of `odd_required`. Deterministic height order.
std::optional<FieldElement> search_b(const FieldDesc& field, const FieldElement& d, const FieldElement& scale,
                                     const PlaceSet& target, const PlaceSet& odd_required,
                                     const FindAbOptions& options) {
  std::vector<FieldElement> pool;
  std::set<Place> seen;
  for (const Place& v : first_places(field, options.pool_places)) {
    if (seen.insert(v).second) pool.push_back(v.uniformizer());
  }
  for (const Place& v : target) {
    if (seen.insert(v).second) pool.push_back(v.uniformizer());
  }
  std::vector<FieldElement> units = {FieldElement(field, 1)};
  if (field.is_rationals() || field.characteristic() != 2) units.push_back(smallest_nonsquare_unit(field));
  std::vector<FieldElement> candidates;
  std::vector<FieldElement> current;
  std::function<void(std::size_t, int, const FieldElement&)> rec = [&](std::size_t start, int left,
                                                                        const FieldElement& prod) {
    for (const auto& u : units) candidates.push_back(u * prod);
    if (left == 0) return;
    for (std::size_t i = start; i < pool.size(); ++i) rec(i + 1, left - 1, prod * pool[i]);
  };
  rec(0, options.max_factors, FieldElement(field, 1));
  std::sort(candidates.begin(), candidates.end(), height_less);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const FieldElement& b : candidates) {
    FieldElement bs = b * scale;
    bool parity_ok = true;
    for (const Place& v : odd_required) {
      if (valuation(bs, v) % 2 == 0) {
        parity_ok = false;
        break;
      }
    }
    if (!parity_ok) continue;
    QuaternionDesc q = QuaternionDesc::artin_schreier(d, bs);
    if (ramification_set(q) == target) return b;
  }
  return std::nullopt;
}

// z with v(z) = k_v exactly at each listed place.
FieldElement with_valuations(const FieldDesc& field, const std::vector<std::pair<Place, int>>& wanted) {
  std::vector<ApproximationTarget> targets;
  for (const auto& [v, k] : wanted) targets.push_back({v, v.uniformizer().pow(k), k});
  if (targets.empty()) return FieldElement(field, 1);
  return weak_approximate(field, targets);
}

}  // namespace

std::vector<std::string> pack_violations(const SynthesisPack& pack) {
  std::vector<std::string> out;
  if (pack.S.empty()) out.push_back("S is empty");
  if (pack.S.size() % 2 == 0) out.push_back("|S| is even");
  if (pack.pi.is_zero() || pack.u.is_zero() || pack.c.is_zero()) {
    out.push_back("pi, u, c must be nonzero");
    return out;
  }
  PlaceSet odd = odd_neg(pack.pi).odd;
  for (const Place& v : pack.S) {
    if (!odd.count(v)) out.push_back("S not inside Odd(pi): " + v.to_string());
    if (valuation(pack.u, v) != 0) {
      out.push_back("(i) u is not a unit at " + v.to_string());
      continue;
    }
    ResidueField k(v);
    ResidueElement r = k.reduce(pack.u);
    if (!k.artin_schreier_irreducible(k.mul(r, r))) {
      out.push_back("(i) X^2 - X - u^2 reducible at " + v.to_string());
    }
  }
  for (const Place& v : odd) {
    int want = pack.S.count(v) ? 0 : 1;
    if (valuation(pack.c, v) != want) {
      out.push_back("(ii) v(c) != " + std::to_string(want) + " at " + v.to_string());
    }
  }
  return out;
}

void validate_pack(const SynthesisPack& pack) {
  auto v = pack_violations(pack);
  if (v.empty()) return;
  std::string msg = "invalid pack " + pack.to_string() + ":";
  for (auto& s : v) msg += " [" + s + "]";
  throw std::invalid_argument(msg);
}

FieldElement find_pi(const FieldDesc& field, const PlaceSet& S) {
  std::vector<FieldElement> bases = {product_of_generators(field, S)};
  if (!S.empty()) {
    std::vector<ApproximationTarget> targets;
    for (const Place& v : S) targets.push_back({v, v.uniformizer(), 1});
    bases.push_back(weak_approximate(field, targets));
  }
  for (const FieldElement& base : bases) {
    if (odd_set_ok(base, S)) return base;
    for (const Place& w : first_places(field, 200)) {
      if (S.count(w)) continue;
      FieldElement cand = base * w.uniformizer();
      if (odd_set_ok(cand, S)) return cand;
    }
  }
  throw std::runtime_error("find_pi: no element found for S = " + to_string(S));
}

FieldElement find_u(const FieldDesc& field, const PlaceSet& S) {
  if (S.empty()) throw std::invalid_argument("find_u: S is empty");
  std::vector<ApproximationTarget> targets;
  for (const Place& v : S) {
    auto rs = irreducible_residues(v, true, 1);
    if (rs.empty()) throw std::runtime_error("find_u: no residue at " + v.to_string());
    ResidueField k(v);
    targets.push_back({v, lift_to(k, rs[0], field), 0});
  }
  FieldElement u = weak_approximate(field, targets);
  SynthesisPack probe{field, S, product_of_generators(field, S), u, FieldElement(field, 1)};
  for (const Place& v : S) {
    ResidueField k(v);
    if (valuation(u, v) != 0 || !k.artin_schreier_irreducible(k.mul(k.reduce(u), k.reduce(u)))) {
      throw std::logic_error("find_u: certification failed at " + v.to_string());
    }
  }
  return u;
}

FieldElement find_c(const FieldDesc& field, const PlaceSet& S, const FieldElement& pi) {
  PlaceSet odd = odd_neg(pi).odd;
  if (!std::includes(odd.begin(), odd.end(), S.begin(), S.end())) {
    throw std::invalid_argument("find_c: S is not inside Odd(pi)");
  }
  auto ok = [&](const FieldElement& c) {
    if (c.is_zero()) return false;
    for (const Place& v : odd) {
      if (valuation(c, v) != (S.count(v) ? 0 : 1)) return false;
    }
    return true;
  };
  int H = field.is_rationals() ? 30 : (field.characteristic() == 2 ? 3 : (field.characteristic() == 3 ? 2 : 1));
  for (const FieldElement& c : enumerate_by_height(field, H)) {
    if (ok(c)) return c;
  }
  std::vector<std::pair<Place, int>> wanted;
  for (const Place& v : odd) wanted.emplace_back(v, S.count(v) ? 0 : 1);
  FieldElement c = with_valuations(field, wanted);
  if (!ok(c)) throw std::logic_error("find_c: certification failed");
  return c;
}

SynthesisPack synthesize_pack(const FieldDesc& field, const PlaceSet& S) {
  if (S.empty() || S.size() % 2 == 0) throw std::invalid_argument("synthesize_pack needs odd |S|");
  SynthesisPack pack;
  pack.field = field;
  pack.S = S;
  pack.pi = find_pi(field, S);
  pack.u = find_u(field, S);
  pack.c = find_c(field, S, pack.pi);
  validate_pack(pack);
  return pack;
}

std::pair<FieldElement, FieldElement> find_ab(const SynthesisPack& pack, const Place& w,
                                              const FindAbOptions& options) {
  const FieldDesc& field = pack.field;
  if (pack.S.count(w)) throw std::invalid_argument("find_ab: w = " + w.to_string() + " lies in S");
  if (w.field() != field) throw std::invalid_argument("find_ab: place from another field");
  PlaceSet odd = odd_neg(pack.pi).odd;
  for (const Place& v : pack.S) {
    if (!odd.count(v)) throw std::invalid_argument("find_ab: S is not inside Odd(pi)");
    ResidueField k(v);
    if (valuation(pack.u, v) != 0 || !k.artin_schreier_irreducible(k.mul(k.reduce(pack.u), k.reduce(pack.u)))) {
      throw std::invalid_argument("find_ab: u violates the residue hypothesis at " + v.to_string());
    }
  }
  // a: congruent to u along S, residue at w with X^2 - X - a^2 irreducible.
  ResidueField kw(w);
  std::optional<FieldElement> a;
  for (const ResidueElement& r : irreducible_residues(w, true, 5000)) {
    std::vector<ApproximationTarget> targets;
    for (const Place& v : pack.S) targets.push_back({v, pack.u, 0});
    targets.push_back({w, lift_to(kw, r, field), 0});
    FieldElement cand = weak_approximate(field, targets);
    if (!a || height_less(cand, *a)) a = cand;
  }
  if (!a) throw std::runtime_error("find_ab: no admissible residue at " + w.to_string());
  PlaceSet target = pack.S;
  target.insert(w);
  FieldElement a2 = *a * *a;
  auto b = search_b(field, a2, pack.pi, target, target, options);
  if (!b) {
    throw std::runtime_error("find_ab: search budget exhausted for w = " + w.to_string() + ", a = " +
                             a->to_string() + " (pool " + std::to_string(options.pool_places) + " places, " +
                             std::to_string(options.max_factors) + " factors)");
  }
  // Make b a unit along S by a square factor.
  std::vector<std::pair<Place, int>> wanted;
  bool needs = false;
  for (const Place& v : pack.S) {
    int vb = valuation(*b, v);
    if (vb % 2 != 0) throw std::logic_error("find_ab: odd valuation of b on S");
    needs |= vb != 0;
    wanted.emplace_back(v, -vb / 2);
  }
  FieldElement bb = *b;
  if (needs) {
    FieldElement z = with_valuations(field, wanted);
    bb = bb * z * z;
  }
  if (!in_phi(pack.S, pack.u, *a, bb) || ramification_set(QuaternionDesc::artin_schreier(a2, bb * pack.pi)) != target) {
    throw std::logic_error("find_ab: certification failed");
  }
  return {*a, bb};
}

QuaternionDesc find_algebra(const FieldDesc& field, const PlaceSet& T) {
  if (T.size() % 2 != 0) throw std::invalid_argument("find_algebra: |T| must be even");
  if (T.empty()) return QuaternionDesc::artin_schreier(FieldElement(field, 0), FieldElement(field, 1));
  std::vector<ApproximationTarget> targets;
  for (const Place& v : T) {
    auto rs = irreducible_residues(v, false, 1);
    if (rs.empty()) throw std::runtime_error("find_algebra: no residue at " + v.to_string());
    ResidueField k(v);
    targets.push_back({v, lift_to(k, rs[0], field), 0});
  }
  FieldElement d = weak_approximate(field, targets);
  FindAbOptions options;
  options.max_factors = std::max<int>(3, static_cast<int>(T.size()) + 1);
  options.pool_places = T.size() > 2 ? 12 : 25;
  auto b = search_b(field, d, FieldElement(field, 1), T, T, options);
  if (!b) throw std::runtime_error("find_algebra: no b found for T = " + to_string(T));
  QuaternionDesc q = QuaternionDesc::artin_schreier(d, *b);
  if (ramification_set(q) != T || !is_nonreal(q)) throw std::logic_error("find_algebra: certification failed");
  return q;
}

std::pair<QuaternionDesc, QuaternionDesc> find_algebra_pair(const FieldDesc& field, const PlaceSet& S) {
  if (S.empty()) throw std::invalid_argument("find_algebra_pair: S is empty");
  PlaceSet T1 = S, T2 = S;
  if (S.size() % 2 == 0) {
    // Delta = S works for both members.
    QuaternionDesc q = find_algebra(field, S);
    return {q, q};
  }
  Place w1 = smallest_place_outside(field, S);
  PlaceSet S1 = S;
  S1.insert(w1);
  Place w2 = smallest_place_outside(field, S1);
  T1.insert(w1);
  T2.insert(w2);
  return {find_algebra(field, T1), find_algebra(field, T2)};
}

std::optional<std::pair<FieldElement, FieldElement>> witness_for(const FieldElement& x,
                                                                 const SynthesisPack& pack) {
  WitnessProvider provider(pack);
  return provider.witness_for(x);
}

WitnessProvider::WitnessProvider(SynthesisPack pack) : pack_(std::move(pack)) {}

std::pair<FieldElement, FieldElement> WitnessProvider::find_ab(const Place& w) {
  auto it = ab_cache_.find(w);
  if (it != ab_cache_.end()) return it->second;
  auto ab = univdef::find_ab(pack_, w);
  ab_cache_.emplace(w, ab);
  return ab;
}

const PlaceSet& WitnessProvider::delta(const FieldElement& a, const FieldElement& b) {
  std::string key = a.to_string() + "|" + b.to_string();
  auto it = delta_cache_.find(key);
  if (it != delta_cache_.end()) return it->second;
  return delta_cache_.emplace(key, ramification_set(t_algebra(pack_, a, b))).first->second;
}

bool WitnessProvider::in_T(const FieldElement& a, const FieldElement& b, const FieldElement& x) {
  if (!in_phi(pack_.S, pack_.u, a, b)) throw std::invalid_argument("(a, b) outside Phi");
  return in_T_places(delta(a, b), pack_, a, b, x);
}

std::optional<std::pair<FieldElement, FieldElement>> WitnessProvider::witness_for(const FieldElement& x) {
  if (!in_complement_union(x, pack_.S)) return std::nullopt;
  std::optional<Place> w;
  if (x.is_zero()) {
    w = smallest_place_outside(pack_.field, pack_.S);
  } else {
    for (const Place& v : support(x)) {
      if (!pack_.S.count(v) && valuation(x, v) > 0) {
        w = v;
        break;
      }
    }
  }
  auto ab = find_ab(*w);
  if (!in_T(ab.first, ab.second, x)) {
    throw std::logic_error("witness_for: T_{a,b} misses " + x.to_string() + " for pack " + pack_.to_string());
  }
  return ab;
}

SIntegerPlan plan_s_integers(const FieldDesc& field, const PlaceSet& S, bool optimized) {
  for (const Place& v : S) {
    if (v.field() != field) throw std::invalid_argument("place " + v.to_string() + " is not a place of " + field.name());
  }
  SIntegerPlan plan;
  plan.field = field;
  plan.S = S;
  plan.optimized = optimized;
  PlaceSet S_pack;
  FieldElement pi;
  if (optimized) {
    PlaceSet S0 = S;
    if (field.is_rationals()) S0.insert(Place::prime(2));
    pi = find_pi(field, S0);
    S_pack = odd_neg(pi).odd;
  } else {
    S_pack = S;
    if (S_pack.size() % 2 == 0) S_pack.insert(smallest_place_outside(field, S));
    pi = find_pi(field, S_pack);
  }
  plan.pack.field = field;
  plan.pack.S = S_pack;
  plan.pack.pi = pi;
  plan.pack.u = find_u(field, S_pack);
  plan.pack.c = find_c(field, S_pack, pi);
  validate_pack(plan.pack);
  for (const Place& v : S_pack) {
    if (!S.count(v)) plan.extra.push_back(v);
  }
  return plan;
}

bool chain_union_member(const SIntegerPlan& plan, WitnessProvider& provider, const FieldElement& x) {
  if (auto ab = provider.witness_for(x)) {
    if (in_phi(plan.pack.S, plan.pack.u, ab->first, ab->second) && provider.in_T(ab->first, ab->second, x)) {
      return true;
    }
  }
  for (const Place& v : plan.extra) {
    // x in m_v iff x / pi_v in O_v.
    if (valuation(x, v) >= 1) return true;
  }
  return false;
}

bool chain_o_s_member(const SIntegerPlan& plan, WitnessProvider& provider, const FieldElement& x) {
  if (x.is_zero()) return true;
  return !chain_union_member(plan, provider, x.inverse());
}

}  // namespace univdef
