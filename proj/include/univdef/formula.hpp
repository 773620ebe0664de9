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

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "univdef/field.hpp"

namespace univdef {

// Immutable polynomial term. Nodes are shared, so rewriting keeps sharing.
class Term {
 public:
  enum class Kind { kConst, kVar, kAdd, kSub, kMul, kNeg };
  struct Node;

  Term() = default;  // empty handle, only valid as a placeholder
  static Term constant(const FieldElement& value);
  // Integer literal; rational constants act in every field of suitable characteristic.
  static Term integer(long n);
  static Term var(const std::string& name);

  Kind kind() const;
  const FieldElement& value() const;
  const std::string& name() const;
  const Term& lhs() const;
  const Term& rhs() const;
  const std::set<std::string>& variables() const;
  bool has_var(const std::string& v) const { return variables().count(v) > 0; }
  const void* id() const { return node_.get(); }

  friend Term operator+(const Term& a, const Term& b);
  friend Term operator-(const Term& a, const Term& b);
  friend Term operator*(const Term& a, const Term& b);
  Term operator-() const;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Term pow(const Term& t, int e);

class Formula {
 public:
  enum class Kind { kEq, kNot, kAnd, kOr, kExists, kForall };
  struct Node;

  static Formula eq(const Term& lhs, const Term& rhs);
  static Formula neq(const Term& lhs, const Term& rhs);
  static Formula negation(const Formula& f);
  // n-ary; a single child is returned as is, nested And (resp. Or) is flattened.
  // Empty conjunction is 0 = 0, empty disjunction 1 = 0.
  static Formula conj(const std::vector<Formula>& children);
  static Formula disj(const std::vector<Formula>& children);
  static Formula exists(const std::string& var, const Formula& body);
  static Formula forall(const std::string& var, const Formula& body);
  static Formula exists(const std::vector<std::string>& vars, const Formula& body);

  Kind kind() const;
  const Term& lhs() const;
  const Term& rhs() const;
  const std::vector<Formula>& children() const;
  const Formula& body() const;  // Not and quantifiers
  const std::string& var() const;
  const std::set<std::string>& free_variables() const;
  const void* id() const { return node_.get(); }
  bool is_quantifier() const { return kind() == Kind::kExists || kind() == Kind::kForall; }

 private:
  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula operator~(const Formula& a);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

struct ParseError : std::runtime_error {
  ParseError(std::size_t pos, const std::string& msg);
  std::size_t position;
};

// Bracketed literals are read in `field`; bare integers are rational.
Formula parse_formula(const std::string& text, const FieldDesc& field = FieldDesc::rationals());
Term parse_term(const std::string& text, const FieldDesc& field = FieldDesc::rationals());

enum class Polarity { kQuantifierFree, kExistential, kUniversal, kMixed };
Polarity polarity(const Formula& f);
std::string to_string(Polarity p);
// Additive convention: for existential formulas And adds and Or takes the max;
// dually for universal ones. Throws on mixed formulas.
int rank(const Formula& f);

std::set<std::string> bound_variables(const Formula& f);
std::set<std::string> all_variables(const Formula& f);
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Degree of t in v (syntactic upper bound).
int degree_in(const Term& t, const std::string& v);

Term substitute(const Term& t, const std::map<std::string, Term>& s);
// Capture-avoiding.
Formula substitute(const Formula& f, const std::string& var, const Term& replacement);
// Replaces var by num/den in every atom and multiplies through by the matching
// power of den. Equivalent to the substitution wherever den != 0.
Formula substitute_fraction(const Formula& f, const std::string& var, const Term& num, const Term& den);

// Renames every bound variable that lies in `avoid`.
Formula rename_bound(const Formula& f, const std::set<std::string>& avoid);
// Bound variables renamed v1, v2, ... in preorder, skipping free names.
Formula normalize_bound_names(const Formula& f, const std::string& prefix = "v");

bool alpha_equivalent(const Formula& a, const Formula& b);
bool alpha_equivalent(const Term& a, const Term& b);

enum class Connective { kAnd, kOr };
// Both operands existential or both universal (quantifier-free fits either);
// bound variables renamed apart.
Formula combine(const Formula& a, const Formula& b, Connective op);
Formula combine_all(const std::vector<Formula>& parts, Connective op);

// Node counts of the expanded tree (saturating).
std::size_t term_size(const Term& t);
std::size_t atom_count(const Formula& f);

}  // namespace univdef
