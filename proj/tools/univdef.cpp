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
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "univdef/builders.hpp"
#include "univdef/fg_ring.hpp"
#include "univdef/suites.hpp"

using namespace univdef;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_json = false;

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

json tri_json(Tri t) { return to_string(t); }

int tri_exit(Tri t) { return t == Tri::kUnknown ? kExitBudget : kExitPass; }

std::vector<std::string> place_list(const PlaceSet& s) {
  std::vector<std::string> out;
  for (const Place& v : s) out.push_back(v.to_string());
  return out;
}

PlaceSet read_places(const FieldDesc& field, std::string text) {
  if (text.empty() || text.front() != '{') text = "{" + text + "}";
  return parse_place_set(field, text);
}

std::string read_formula_file(const std::string& path) {
  std::istream* in = &std::cin;
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw UsageError("cannot open " + path);
    in = &file;
  }
  std::string text, line;
  while (std::getline(*in, line)) {
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    text += line + " ";
  }
  return text;
}

int cmd_ramify(const std::string& field_text, const std::string& algebra) {
  FieldDesc field = FieldDesc::parse(field_text);
  QuaternionDesc q = QuaternionDesc::parse(field, algebra);
  PlaceSet d = ramification_set(q);
  if (g_json) {
    emit_json({{"algebra", q.to_string()}, {"field", field.name()}, {"ramification", place_list(d)},
               {"nonreal", is_nonreal(q)}});
  } else {
    std::cout << to_string(d) << "\n";
  }
  return kExitPass;
}

int cmd_member(const std::string& field_text, const std::string& expr, const std::string& x) {
  FieldDesc field = FieldDesc::parse(field_text);
  SetExpr e = SetExpr::parse(field, expr);
  Tri t = e.contains(x);
  if (g_json) {
    emit_json({{"set", expr}, {"kind", e.kind()}, {"field", field.name()}, {"x", x}, {"member", tri_json(t)}});
  } else {
    std::cout << to_string(t) << "\n";
  }
  return tri_exit(t);
}

int cmd_synthesize(const std::string& field_text, const std::string& s_text) {
  FieldDesc field = FieldDesc::parse(field_text);
  PlaceSet S = read_places(field, s_text);
  SynthesisPack pack = synthesize_pack(field, S);
  auto [q1, q2] = find_algebra_pair(field, S);
  if (g_json) {
    emit_json({{"field", field.name()},
               {"S", place_list(S)},
               {"pack", pack.to_string()},
               {"pi", pack.pi.to_string()},
               {"u", pack.u.to_string()},
               {"c", pack.c.to_string()},
               {"sigma_algebras", {q1.to_string(), q2.to_string()}}});
  } else {
    std::cout << pack.to_string() << "\n";
    std::cout << "# Sigma algebras: " << q1.to_string() << ", " << q2.to_string() << "\n";
  }
  return kExitPass;
}

void print_formula(const Formula& f, const std::string& what, json extra) {
  Polarity p = polarity(f);
  int r = p == Polarity::kMixed ? -1 : rank(f);
  if (g_json) {
    extra["what"] = what;
    extra["rank"] = r;
    extra["polarity"] = to_string(p);
    extra["formula"] = to_string(f);
    emit_json(extra);
  } else {
    std::cout << "# " << what << ": rank " << r << ", " << to_string(p) << "\n" << to_string(f) << "\n";
  }
}

int cmd_emit(const std::string& field_text, const std::string& s_text, bool optimized, bool diophantine,
             bool universal) {
  if (diophantine && universal) throw UsageError("--diophantine and --universal exclude each other");
  FieldDesc field = FieldDesc::parse(field_text);
  PlaceSet S = read_places(field, s_text);
  SIntegerPlan plan = plan_s_integers(field, S, optimized);
  json extra = {{"field", field.name()}, {"S", place_list(S)}, {"pack", plan.pack.to_string()}};
  extra["extra_places"] = json::array();
  for (const Place& v : plan.extra) extra["extra_places"].push_back(v.to_string());
  if (universal) {
    print_formula(build_o_s(plan), "O_S", extra);
  } else if (diophantine) {
    print_formula(to_diophantine(build_s_integer_union(plan), Domain::of(field)), "union of m_v outside S, diophantine",
                  extra);
  } else {
    print_formula(build_s_integer_union(plan), "union of m_v outside S", extra);
  }
  return kExitPass;
}

int cmd_verify(const std::string& suite, int height, std::uint64_t seed, const std::string& corpus) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.height = height;
  cfg.corpus = corpus;
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    names = {suite};
  }
  int worst = kExitPass;
  json all = json::array();
  for (const std::string& name : names) {
    Report r;
    try {
      r = run_suite(name, cfg);
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("unknown suite", 0) == 0) throw UsageError(e.what());
      throw;
    }
    if (g_json) {
      all.push_back(json::parse(r.to_json()));
    } else {
      std::cout << r.to_text();
    }
    int code = r.exit_code();
    if (code == kExitFail || (code == kExitBudget && worst == kExitPass)) worst = code;
  }
  if (g_json) emit_json(names.size() == 1 ? all[0] : all);
  return worst;
}

int cmd_fgring(const std::string& desc_text, bool emit, const std::string& member) {
  FgRingDesc d = FgRingDesc::parse(desc_text);
  RingAnalysis a = analyze(d);
  FieldDesc field = d.field();
  json j = {{"ring", d.to_string()}, {"field", field.name()}, {"S", place_list(a.S)}, {"conductor", a.conductor.to_string()}};
  j["reps"] = json::array();
  for (const FieldElement& y : a.reps) j["reps"].push_back(y.to_string());
  if (!g_json) {
    std::cout << d.to_string() << ": S = " << to_string(a.S) << ", r = " << a.conductor.to_string() << ", reps = {";
    for (std::size_t i = 0; i < a.reps.size(); ++i) std::cout << (i ? ", " : "") << a.reps[i].to_string();
    std::cout << "}\n";
  }
  int code = kExitPass;
  if (!member.empty() || emit) {
    SIntegerPlan plan = plan_s_integers(field, a.S, false);
    j["pack"] = plan.pack.to_string();
    if (!member.empty()) {
      FieldElement x = parse_element(field, member);
      WitnessProvider provider(plan.pack);
      bool direct = in_ring_direct(d, x);
      bool chain = in_ring_chain(a, plan, provider, x);
      j["x"] = x.to_string();
      j["member"] = direct;
      j["member_via_formula_chain"] = chain;
      if (!g_json) {
        std::cout << "member " << x.to_string() << ": " << (direct ? "true" : "false") << " (formula chain "
                  << (chain ? "true" : "false") << ")\n";
      }
      if (direct != chain) code = kExitFail;
    }
    if (emit) {
      Formula f = build_ring_formula(a, plan);
      j["rank"] = rank(f);
      j["formula"] = to_string(f);
      if (!g_json) std::cout << "# ring formula: rank " << rank(f) << ", universal\n" << to_string(f) << "\n";
    }
  }
  if (g_json) emit_json(j);
  return code;
}

std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& at) {
  std::map<std::string, std::string> out;
  for (const std::string& s : at) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--at expects name=value, got '" + s + "'");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

int cmd_eval(const std::string& path, const std::string& domain_text, std::size_t budget_nodes, int height,
             const std::vector<std::string>& at) {
  Domain dom = Domain::parse(domain_text);
  std::string text = read_formula_file(path);
  Formula f = parse_formula(text, dom.kind == Domain::Kind::kGlobal ? dom.field : FieldDesc::rationals());
  auto assignment = parse_assignments(at);
  for (const auto& [k, v] : assignment) {
    if (!f.free_variables().count(k)) throw UsageError("'" + k + "' is not a free variable of the formula");
  }
  json j = {{"domain", dom.name()}, {"formula", to_string(f)}, {"polarity", to_string(polarity(f))}};
  if (dom.kind == Domain::Kind::kFinite) {
    const FiniteField& F = *dom.finite;
    std::map<std::string, std::uint32_t> asg;
    std::vector<std::string> open;
    for (const std::string& v : f.free_variables()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        open.push_back(v);
        continue;
      }
      asg[v] = F.from_constant(parse_element(FieldDesc::rationals(), it->second));
    }
    if (open.empty()) {
      bool v = eval_finite(f, F, asg);
      j["value"] = v ? "true" : "false";
      if (g_json) emit_json(j);
      else std::cout << (v ? "true" : "false") << "\n";
      return kExitPass;
    }
    // Unassigned free variables: list the satisfying tuples.
    Formula g = f;
    for (const auto& [k, v] : asg) g = substitute(g, k, Term::integer(static_cast<long>(v)));
    if (F.degree() > 1 && !asg.empty()) throw UsageError("--at over a non-prime field needs all free variables");
    std::vector<bool> table = truth_table(g, F, open);
    j["variables"] = open;
    j["members"] = json::array();
    std::size_t count = 0;
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      if (!table[idx]) continue;
      ++count;
      std::vector<std::string> tuple(open.size());
      std::size_t r = idx;
      for (std::size_t k = open.size(); k-- > 0;) {
        tuple[k] = F.element_name(r % F.order());
        r /= F.order();
      }
      j["members"].push_back(tuple);
      if (!g_json) {
        std::cout << "(";
        for (std::size_t k = 0; k < tuple.size(); ++k) std::cout << (k ? ", " : "") << tuple[k];
        std::cout << ")\n";
      }
    }
    j["count"] = count;
    if (g_json) emit_json(j);
    else std::cout << "# " << count << " of " << table.size() << " assignments\n";
    return kExitPass;
  }
  std::map<std::string, FieldElement> asg;
  for (const std::string& v : f.free_variables()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw UsageError("no value for free variable '" + v + "' (use --at " + v + "=...)");
    asg[v] = parse_element(dom.field, it->second);
  }
  GlobalBudget b;
  if (budget_nodes) b.nodes = budget_nodes;
  if (height > 0) b.height = height;
  GlobalEval e = eval_global(f, dom.field, asg, b);
  j["value"] = to_string(e.value);
  j["nodes"] = e.nodes;
  j["budget_exhausted"] = e.budget_exhausted;
  j["search_complete_without_witness"] = e.refuted;
  json w = json::object();
  for (const auto& [k, v] : e.witness) w[k] = v.to_string();
  j["witness"] = w;
  if (g_json) {
    emit_json(j);
  } else {
    std::cout << to_string(e.value);
    if (!e.witness.empty()) {
      std::cout << (polarity(f) == Polarity::kUniversal ? "  counterexample:" : "  witness:");
      for (const auto& [k, v] : e.witness) std::cout << " " << k << " = " << v.to_string();
    }
    std::cout << "\n# " << e.nodes << " nodes" << (e.budget_exhausted ? ", budget exhausted" : "")
              << (e.refuted ? ", search space exhausted without a witness" : "") << "\n";
  }
  return tri_exit(e.value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal and existential definitions of S-integers in global fields"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g_json, "Machine-readable output");
  std::string field = "Q";

  auto* ramify = app.add_subcommand("ramify", "Ramification set of a quaternion algebra");
  std::string algebra;
  ramify->add_option("algebra", algebra, "AS[a;b] or CL(a;b)")->required();
  ramify->add_option("--field", field, "Q or Fp(T)");

  auto* member = app.add_subcommand("member", "Membership in a definable set");
  std::string expr, x;
  member->add_option("set", expr, "Set expression, e.g. OS[{q:5}]")->required();
  member->add_option("x", x, "Field element (or a,b for Phi)")->required();
  member->add_option("--field", field, "Q or Fp(T)");

  auto* synth = app.add_subcommand("synthesize", "Synthesize (pi, u, c) for an odd set S");
  std::string s_text;
  synth->add_option("--S", s_text, "Places, e.g. q:5 or {f:T}")->required();
  synth->add_option("--field", field, "Q or Fp(T)");

  auto* emit = app.add_subcommand("emit", "Emit the defining formula for S");
  bool optimized = false, diophantine = false, universal = false;
  emit->add_option("--S", s_text, "Places")->required();
  emit->add_option("--field", field, "Q or Fp(T)");
  emit->add_flag("--optimized", optimized, "Use the shorter union (47/48 quantifiers)");
  emit->add_flag("--diophantine", diophantine, "Single-equation form of the union");
  emit->add_flag("--universal", universal, "Universal definition of O_S");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  int height = 0;
  std::uint64_t seed = 1;
  std::string corpus;
  verify->add_option("suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--height", height, "Height bound override");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--corpus", corpus, "Golden formula file for the transformations suite");

  auto* fg = app.add_subcommand("fgring", "Analyze a finitely generated ring");
  std::string desc, fg_member;
  bool fg_emit = false;
  fg->add_option("desc", desc, "Zinv:n, FpT:p or Mono:p:{k,...}")->required();
  fg->add_flag("--emit", fg_emit, "Print the universal ring formula");
  fg->add_option("--member", fg_member, "Test membership of an element");

  auto* ev = app.add_subcommand("eval", "Evaluate a formula file ('-' for stdin)");
  std::string file, domain;
  std::size_t budget = 0;
  int eval_height = 0;
  std::vector<std::string> at;
  ev->add_option("file", file, "Formula file")->required();
  ev->add_option("--domain", domain, "F<q>, GF(q), Q or Fp(T)")->required();
  ev->add_option("--budget", budget, "Node budget for global fields");
  ev->add_option("--height", eval_height, "Enumeration height for global fields");
  ev->add_option("--at", at, "Assignment name=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*ramify) return cmd_ramify(field, algebra);
    if (*member) return cmd_member(field, expr, x);
    if (*synth) return cmd_synthesize(field, s_text);
    if (*emit) return cmd_emit(field, s_text, optimized, diophantine, universal);
    if (*verify) return cmd_verify(suite, height, seed, corpus);
    if (*fg) return cmd_fgring(desc, fg_emit, fg_member);
    if (*ev) return cmd_eval(file, domain, budget, eval_height, at);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
