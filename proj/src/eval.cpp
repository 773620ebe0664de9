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
#include "univdef/eval.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>

#include "univdef/approximation.hpp"

namespace univdef {

Domain Domain::of(const FiniteField& f) {
  Domain d;
  d.kind = Kind::kFinite;
  d.finite = f;
  return d;
}

Domain Domain::of(const FieldDesc& f) {
  Domain d;
  d.kind = Kind::kGlobal;
  d.field = f;
  return d;
}

Domain Domain::parse(const std::string& text) {
  if (text == "Q" || text.find("(T)") != std::string::npos) return of(FieldDesc::parse(text));
  return of(FiniteField::parse(text));
}

std::string Domain::name() const { return kind == Kind::kFinite ? finite->name() : field.name(); }

// ---------------------------------------------------------------- finite fields

struct FiniteEvaluator::Impl {
  enum class Op { kConst, kVar, kAdd, kSub, kMul, kNeg };
  struct Instr {
    Op op;
    std::uint32_t a = 0, b = 0;
  };
  struct Program {
    std::vector<Instr> code;
    std::uint32_t lhs = 0, rhs = 0;
  };
  struct Node {
    Formula::Kind kind;
    std::vector<Node> children;
    std::uint32_t slot = 0;
    std::size_t program = 0;
  };

  const FiniteField& field;
  std::vector<Program> programs;
  Node root;
  std::size_t free_count = 0;
  std::size_t slots = 0;
  mutable std::vector<std::uint32_t> regs;

  Impl(const FiniteField& f) : field(f) {}

  std::uint32_t compile_term(const Term& t, const std::vector<std::pair<std::string, std::uint32_t>>& env,
                             Program& prog, std::unordered_map<const void*, std::uint32_t>& memo) {
    auto it = memo.find(t.id());
    if (it != memo.end()) return it->second;
    Instr in{Op::kConst};
    switch (t.kind()) {
      case Term::Kind::kConst:
        in = {Op::kConst, field.from_constant(t.value())};
        break;
      case Term::Kind::kVar: {
        bool found = false;
        for (auto e = env.rbegin(); e != env.rend(); ++e) {
          if (e->first == t.name()) {
            in = {Op::kVar, e->second};
            found = true;
            break;
          }
        }
        if (!found) throw std::invalid_argument("unassigned variable " + t.name());
        break;
      }
      case Term::Kind::kAdd:
        in = {Op::kAdd, compile_term(t.lhs(), env, prog, memo), compile_term(t.rhs(), env, prog, memo)};
        break;
      case Term::Kind::kSub:
        in = {Op::kSub, compile_term(t.lhs(), env, prog, memo), compile_term(t.rhs(), env, prog, memo)};
        break;
      case Term::Kind::kMul:
        in = {Op::kMul, compile_term(t.lhs(), env, prog, memo), compile_term(t.rhs(), env, prog, memo)};
        break;
      case Term::Kind::kNeg:
        in = {Op::kNeg, compile_term(t.lhs(), env, prog, memo)};
        break;
    }
    prog.code.push_back(in);
    std::uint32_t r = static_cast<std::uint32_t>(prog.code.size() - 1);
    memo.emplace(t.id(), r);
    return r;
  }

  Node compile(const Formula& f, std::vector<std::pair<std::string, std::uint32_t>>& env) {
    Node n;
    n.kind = f.kind();
    switch (f.kind()) {
      case Formula::Kind::kEq: {
        Program prog;
        std::unordered_map<const void*, std::uint32_t> memo;
        prog.lhs = compile_term(f.lhs(), env, prog, memo);
        prog.rhs = compile_term(f.rhs(), env, prog, memo);
        programs.push_back(std::move(prog));
        n.program = programs.size() - 1;
        break;
      }
      case Formula::Kind::kExists:
      case Formula::Kind::kForall:
        n.slot = static_cast<std::uint32_t>(slots++);
        env.emplace_back(f.var(), n.slot);
        n.children.push_back(compile(f.body(), env));
        env.pop_back();
        break;
      default:
        for (const Formula& c : f.children()) n.children.push_back(compile(c, env));
        break;
    }
    return n;
  }

  bool run(const Program& prog, const std::vector<std::uint32_t>& vals) const {
    if (regs.size() < prog.code.size()) regs.resize(prog.code.size());
    for (std::size_t i = 0; i < prog.code.size(); ++i) {
      const Instr& in = prog.code[i];
      std::uint32_t v = 0;
      switch (in.op) {
        case Op::kConst:
          v = in.a;
          break;
        case Op::kVar:
          v = vals[in.a];
          break;
        case Op::kAdd:
          v = field.add(regs[in.a], regs[in.b]);
          break;
        case Op::kSub:
          v = field.sub(regs[in.a], regs[in.b]);
          break;
        case Op::kMul:
          v = field.mul(regs[in.a], regs[in.b]);
          break;
        case Op::kNeg:
          v = field.neg(regs[in.a]);
          break;
      }
      regs[i] = v;
    }
    return regs[prog.lhs] == regs[prog.rhs];
  }

  bool eval(const Node& n, std::vector<std::uint32_t>& vals) const {
    switch (n.kind) {
      case Formula::Kind::kEq:
        return run(programs[n.program], vals);
      case Formula::Kind::kNot:
        return !eval(n.children[0], vals);
      case Formula::Kind::kAnd:
        for (const Node& c : n.children) {
          if (!eval(c, vals)) return false;
        }
        return true;
      case Formula::Kind::kOr:
        for (const Node& c : n.children) {
          if (eval(c, vals)) return true;
        }
        return false;
      case Formula::Kind::kExists:
        for (std::uint32_t v = 0; v < field.order(); ++v) {
          vals[n.slot] = v;
          if (eval(n.children[0], vals)) return true;
        }
        return false;
      case Formula::Kind::kForall:
        for (std::uint32_t v = 0; v < field.order(); ++v) {
          vals[n.slot] = v;
          if (!eval(n.children[0], vals)) return false;
        }
        return true;
    }
    return false;
  }
};

FiniteEvaluator::FiniteEvaluator(const Formula& f, const FiniteField& field, std::vector<std::string> free_order)
    : impl_(new Impl(field)) {
  for (const std::string& v : f.free_variables()) {
    if (std::find(free_order.begin(), free_order.end(), v) == free_order.end()) {
      delete impl_;
      throw std::invalid_argument("no value for free variable " + v);
    }
  }
  std::vector<std::pair<std::string, std::uint32_t>> env;
  for (const std::string& v : free_order) env.emplace_back(v, static_cast<std::uint32_t>(impl_->slots++));
  impl_->free_count = free_order.size();
  try {
    impl_->root = impl_->compile(f, env);
  } catch (...) {
    delete impl_;
    throw;
  }
}

FiniteEvaluator::~FiniteEvaluator() { delete impl_; }

bool FiniteEvaluator::operator()(const std::vector<std::uint32_t>& values) const {
  if (values.size() != impl_->free_count) throw std::invalid_argument("wrong number of values");
  std::vector<std::uint32_t> vals(impl_->slots, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= impl_->field.order()) throw std::invalid_argument("value outside the field");
    vals[i] = values[i];
  }
  return impl_->eval(impl_->root, vals);
}

bool eval_finite(const Formula& f, const FiniteField& field, const std::map<std::string, std::uint32_t>& assignment) {
  std::vector<std::string> names;
  std::vector<std::uint32_t> values;
  for (const auto& [k, v] : assignment) {
    names.push_back(k);
    values.push_back(v);
  }
  FiniteEvaluator ev(f, field, names);
  return ev(values);
}

std::vector<bool> truth_table(const Formula& f, const FiniteField& field, const std::vector<std::string>& vars) {
  FiniteEvaluator ev(f, field, vars);
  std::vector<bool> out;
  std::vector<std::uint32_t> vals(vars.size(), 0);
  for (;;) {
    out.push_back(ev(vals));
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++vals[i] < field.order()) break;
      vals[i] = 0;
      if (i == 0) return out;
    }
    if (vars.empty()) return out;
  }
}

// ---------------------------------------------------------------- global fields

FieldElement eval_term(const Term& t, const FieldDesc& field, const std::map<std::string, FieldElement>& assignment) {
  std::unordered_map<const void*, FieldElement> memo;
  std::function<FieldElement(const Term&)> rec = [&](const Term& x) -> FieldElement {
    auto it = memo.find(x.id());
    if (it != memo.end()) return it->second;
    FieldElement r;
    switch (x.kind()) {
      case Term::Kind::kConst:
        r = coerce(x.value(), field);
        break;
      case Term::Kind::kVar: {
        auto a = assignment.find(x.name());
        if (a == assignment.end()) throw std::invalid_argument("unassigned variable " + x.name());
        r = a->second;
        break;
      }
      case Term::Kind::kAdd:
        r = rec(x.lhs()) + rec(x.rhs());
        break;
      case Term::Kind::kSub:
        r = rec(x.lhs()) - rec(x.rhs());
        break;
      case Term::Kind::kMul:
        r = rec(x.lhs()) * rec(x.rhs());
        break;
      case Term::Kind::kNeg:
        r = -rec(x.lhs());
        break;
    }
    memo.emplace(x.id(), r);
    return r;
  };
  return rec(t);
}

namespace {

struct BudgetExhausted {};

struct Literal {
  Term lhs, rhs;
  bool is_eq;
};

using Clause = std::vector<std::size_t>;

class GlobalSolver {
 public:
  GlobalSolver(const FieldDesc& field, const GlobalBudget& budget) : field_(field), budget_(budget) {
    candidates_ = enumerate_by_height(field, budget.height);
    points_ = {FieldElement(field, 0), FieldElement(field, 1),
               field.is_rationals() || field.characteristic() != 2 ? FieldElement(field, -1)
                                                                   : FieldElement::generator(field)};
  }

  // Existential formula without free-variable gaps in `asg`.
  Tri search(const Formula& f, std::map<std::string, FieldElement>& asg) {
    Formula g = normalize_bound_names(f, "w");
    record_names(f, g);
    std::vector<std::vector<std::size_t>> dnf = to_dnf(g, true);
    bool all_false = true;
    for (const Clause& c : dnf) {
      Tri r = Tri::kUnknown;
      auto saved = asg;
      try {
        r = solve(c, asg);
      } catch (const BudgetExhausted&) {
        exhausted_ = true;
        return Tri::kUnknown;
      }
      if (r == Tri::kTrue) return Tri::kTrue;
      asg = saved;
      if (r == Tri::kUnknown) all_false = false;
    }
    return all_false ? Tri::kFalse : Tri::kUnknown;
  }

  std::size_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }
  const std::set<std::string>& quantified() const { return quantified_; }

  // Name to report for a normalized variable: the original one unless it was
  // bound more than once.
  std::string display_name(const std::string& v) const {
    auto it = original_.find(v);
    if (it == original_.end() || original_count_.at(it->second) > 1) return v;
    return it->second;
  }

 private:
  void record_names(const Formula& f, const Formula& g) {
    switch (f.kind()) {
      case Formula::Kind::kEq:
        return;
      case Formula::Kind::kNot:
        return record_names(f.body(), g.body());
      case Formula::Kind::kExists:
      case Formula::Kind::kForall:
        original_[g.var()] = f.var();
        ++original_count_[f.var()];
        return record_names(f.body(), g.body());
      default:
        for (std::size_t i = 0; i < f.children().size(); ++i) record_names(f.children()[i], g.children()[i]);
    }
  }

  std::vector<Clause> to_dnf(const Formula& f, bool positive) {
    switch (f.kind()) {
      case Formula::Kind::kEq:
        literals_.push_back({f.lhs(), f.rhs(), positive});
        return {{literals_.size() - 1}};
      case Formula::Kind::kNot:
        return to_dnf(f.body(), !positive);
      case Formula::Kind::kExists:
      case Formula::Kind::kForall:
        quantified_.insert(f.var());
        return to_dnf(f.body(), positive);
      case Formula::Kind::kAnd:
      case Formula::Kind::kOr: {
        bool is_and = (f.kind() == Formula::Kind::kAnd) == positive;
        std::vector<Clause> acc;
        if (is_and) acc.push_back({});
        for (const Formula& c : f.children()) {
          std::vector<Clause> part = to_dnf(c, positive);
          if (is_and) {
            std::vector<Clause> next;
            for (const Clause& a : acc) {
              for (const Clause& b : part) {
                Clause m = a;
                m.insert(m.end(), b.begin(), b.end());
                next.push_back(std::move(m));
                if (next.size() > budget_.max_clauses) throw std::runtime_error("clause limit exceeded");
              }
            }
            acc = std::move(next);
          } else {
            acc.insert(acc.end(), part.begin(), part.end());
            if (acc.size() > budget_.max_clauses) throw std::runtime_error("clause limit exceeded");
          }
        }
        return acc;
      }
    }
    return {};
  }

  std::vector<std::string> open_vars(std::size_t lit, const std::map<std::string, FieldElement>& asg) const {
    std::vector<std::string> out;
    for (const std::string& v : literals_[lit].lhs.variables()) {
      if (quantified_.count(v) && !asg.count(v)) out.push_back(v);
    }
    for (const std::string& v : literals_[lit].rhs.variables()) {
      if (quantified_.count(v) && !asg.count(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
  }

  bool holds(std::size_t lit, const std::map<std::string, FieldElement>& asg) const {
    const Literal& l = literals_[lit];
    bool equal = eval_term(l.lhs, field_, asg) == eval_term(l.rhs, field_, asg);
    return equal == l.is_eq;
  }

  int degree(std::size_t lit, const std::string& v) {
    auto key = std::make_pair(lit, v);
    auto it = degree_cache_.find(key);
    if (it != degree_cache_.end()) return it->second;
    int d = std::max(degree_in(literals_[lit].lhs, v), degree_in(literals_[lit].rhs, v));
    degree_cache_.emplace(key, d);
    return d;
  }

  // Roots in v of lhs - rhs; nullopt when the literal does not constrain v.
  std::optional<std::vector<FieldElement>> roots(std::size_t lit, const std::string& v,
                                                 std::map<std::string, FieldElement>& asg) {
    const Literal& l = literals_[lit];
    std::vector<FieldElement> vals;
    for (const FieldElement& t : points_) {
      asg[v] = t;
      vals.push_back(eval_term(l.lhs, field_, asg) - eval_term(l.rhs, field_, asg));
    }
    asg.erase(v);
    FieldElement C = vals[0];
    FieldElement p1 = vals[1] - C, p2 = vals[2] - C;
    const FieldElement& t2 = points_[2];
    FieldElement A = (p2 - t2 * p1) / (t2 * t2 - t2);
    FieldElement B = p1 - A;
    if (A.is_zero() && B.is_zero()) {
      if (C.is_zero()) return std::nullopt;
      return std::vector<FieldElement>{};
    }
    return solve_quadratic(A, B, C);
  }

  Tri solve(const Clause& lits, std::map<std::string, FieldElement>& asg) {
    if (++nodes_ > budget_.nodes) throw BudgetExhausted{};
    std::vector<std::size_t> pending;
    for (std::size_t l : lits) {
      if (open_vars(l, asg).empty()) {
        if (!holds(l, asg)) return Tri::kFalse;
      } else {
        pending.push_back(l);
      }
    }
    if (pending.empty()) return Tri::kTrue;
    // Solve a variable from an equation of degree <= 2 in it.
    std::optional<std::pair<std::string, std::vector<FieldElement>>> best;
    for (std::size_t l : pending) {
      if (!literals_[l].is_eq) continue;
      auto open = open_vars(l, asg);
      if (open.size() != 1 || degree(l, open[0]) > 2) continue;
      auto rs = roots(l, open[0], asg);
      if (!rs) continue;
      if (!best || rs->size() < best->second.size()) best = std::make_pair(open[0], *rs);
      if (best->second.empty()) return Tri::kFalse;
    }
    if (best) {
      Tri result = Tri::kFalse;
      auto saved = asg;
      for (const FieldElement& r : best->second) {
        asg[best->first] = r;
        Tri t = solve(lits, asg);
        if (t == Tri::kTrue) return t;
        if (t == Tri::kUnknown) result = Tri::kUnknown;
        asg = saved;
      }
      return result;
    }
    // Independent components.
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
      auto it = parent.find(x);
      if (it == parent.end() || it->second == x) return x;
      return it->second = find(it->second);
    };
    std::map<std::size_t, std::vector<std::string>> open_of;
    for (std::size_t l : pending) {
      auto open = open_vars(l, asg);
      open_of[l] = open;
      for (const std::string& v : open) parent.emplace(v, v);
      for (std::size_t i = 1; i < open.size(); ++i) parent[find(open[i])] = find(open[0]);
    }
    std::map<std::string, Clause> groups;
    for (std::size_t l : pending) groups[find(open_of[l][0])].push_back(l);
    if (groups.size() > 1) {
      bool unknown = false;
      for (auto& [root, group] : groups) {
        Tri t = solve(group, asg);
        if (t == Tri::kFalse) return Tri::kFalse;
        if (t == Tri::kUnknown) {
          unknown = true;
          break;
        }
      }
      return unknown ? Tri::kUnknown : Tri::kTrue;
    }
    // Enumerate the most shared variable.
    std::map<std::string, int> count;
    for (auto& [l, open] : open_of) {
      for (const std::string& v : open) count[v] += 1;
    }
    std::string pick;
    int best_count = -1;
    for (auto& [v, c] : count) {
      if (c > best_count) {
        best_count = c;
        pick = v;
      }
    }
    auto saved = asg;
    for (const FieldElement& cand : candidates_) {
      asg[pick] = cand;
      Tri t = solve(lits, asg);
      if (t == Tri::kTrue) return t;
      asg = saved;
    }
    return Tri::kUnknown;
  }

  FieldDesc field_;
  GlobalBudget budget_;
  std::vector<FieldElement> candidates_;
  std::vector<FieldElement> points_;
  std::vector<Literal> literals_;
  std::set<std::string> quantified_;
  std::map<std::string, std::string> original_;
  std::map<std::string, int> original_count_;
  std::map<std::pair<std::size_t, std::string>, int> degree_cache_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

GlobalEval eval_global(const Formula& f, const FieldDesc& field, const std::map<std::string, FieldElement>& assignment,
                       const GlobalBudget& budget) {
  for (const std::string& v : f.free_variables()) {
    if (!assignment.count(v)) throw std::invalid_argument("no value for free variable " + v);
  }
  std::map<std::string, FieldElement> asg;
  for (const auto& [k, v] : assignment) asg.emplace(k, coerce(v, field));
  GlobalEval out;
  Polarity p = polarity(f);
  if (p == Polarity::kMixed) return out;
  bool universal = p == Polarity::kUniversal;
  Formula target = universal ? Formula::negation(f) : f;
  GlobalSolver solver(field, budget);
  std::map<std::string, FieldElement> work = asg;
  Tri r = solver.search(target, work);
  out.nodes = solver.nodes();
  out.budget_exhausted = solver.exhausted();
  if (r == Tri::kTrue) {
    for (const std::string& v : solver.quantified()) {
      auto it = work.find(v);
      out.witness.emplace(solver.display_name(v), it == work.end() ? FieldElement(field, 0) : it->second);
    }
  }
  if (p == Polarity::kQuantifierFree) {
    out.value = r;
    return out;
  }
  out.refuted = r == Tri::kFalse;
  if (r == Tri::kTrue) out.value = universal ? Tri::kFalse : Tri::kTrue;
  return out;
}

namespace {

void count_binders(const Formula& f, std::map<std::string, int>& n) {
  if (f.is_quantifier()) ++n[f.var()];
  if (f.kind() == Formula::Kind::kEq) return;
  if (f.kind() == Formula::Kind::kNot || f.is_quantifier()) return count_binders(f.body(), n);
  for (const Formula& c : f.children()) count_binders(c, n);
}

bool eval_fixed(const Formula& f, const FieldDesc& field, std::map<std::string, FieldElement>& asg,
                const std::map<std::string, FieldElement>& witness) {
  switch (f.kind()) {
    case Formula::Kind::kEq:
      return eval_term(f.lhs(), field, asg) == eval_term(f.rhs(), field, asg);
    case Formula::Kind::kNot:
      return !eval_fixed(f.body(), field, asg, witness);
    case Formula::Kind::kAnd:
      for (const Formula& c : f.children()) {
        if (!eval_fixed(c, field, asg, witness)) return false;
      }
      return true;
    case Formula::Kind::kOr:
      for (const Formula& c : f.children()) {
        if (eval_fixed(c, field, asg, witness)) return true;
      }
      return false;
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      auto it = witness.find(f.var());
      if (it == witness.end()) return false;
      auto saved = asg.find(f.var()) == asg.end() ? std::nullopt : std::optional<FieldElement>(asg.at(f.var()));
      asg[f.var()] = it->second;
      bool r = eval_fixed(f.body(), field, asg, witness);
      if (saved) asg[f.var()] = *saved; else asg.erase(f.var());
      return r;
    }
  }
  return false;
}

}  // namespace

bool check_witness(const Formula& f, const FieldDesc& field, const std::map<std::string, FieldElement>& assignment,
                   const std::map<std::string, FieldElement>& witness) {
  if (polarity(f) == Polarity::kUniversal || polarity(f) == Polarity::kMixed) {
    throw std::invalid_argument("check_witness: existential formula expected");
  }
  std::map<std::string, int> binders;
  count_binders(f, binders);
  for (const auto& [v, n] : binders) {
    if (n > 1) throw std::invalid_argument("check_witness: " + v + " is bound twice; normalize bound names first");
  }
  std::map<std::string, FieldElement> asg;
  for (const auto& [k, v] : assignment) asg.emplace(k, coerce(v, field));
  return eval_fixed(f, field, asg, witness);
}

}  // namespace univdef
