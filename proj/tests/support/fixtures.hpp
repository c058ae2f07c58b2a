#pragma once

// Shared test fixtures: small signatures, structure enumeration and random
// formula generation. Test-only code; the generators are deterministic.

#include <random>

#include "poslog/model.hpp"

namespace poslog::testing {

// Single sort "elem", relations P0, P1 (unary).
inline Signature sig_two_preds() {
  Signature s;
  s.sorts = {"elem"};
  s.relations.push_back({"P0", {0}});
  s.relations.push_back({"P1", {0}});
  return s;
}

// Single sort, one binary relation D.
inline Signature sig_binary() {
  Signature s;
  s.sorts = {"elem"};
  s.relations.push_back({"D", {0, 0}});
  return s;
}

// Pure equality: one sort, no symbols.
inline Signature sig_pure() {
  Signature s;
  s.sorts = {"elem"};
  return s;
}

// Three constants c0, c1, c2 over one sort.
inline Signature sig_const3() {
  Signature s;
  s.sorts = {"elem"};
  s.constants.push_back({"c0", 0});
  s.constants.push_back({"c1", 0});
  s.constants.push_back({"c2", 0});
  return s;
}

// The distinct-constants theory: c_i = c_j -> false for i < j.
inline Theory theory_const3() {
  Theory t;
  t.sig = sig_const3();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Sentence s;
      s.premise = eq(Term::mk_const(i), Term::mk_const(j));
      s.conclusion = bot();
      t.axioms.push_back(s);
    }
  return t;
}

// Disjoint predicates: P0(x) & P1(x) -> false.
inline Theory theory_disjoint() {
  Theory t;
  t.sig = sig_two_preds();
  Sentence s;
  s.vars = {{"x", 0}};
  s.premise = conj({atom(0, {Term::mk_var("x")}), atom(1, {Term::mk_var("x")})});
  s.conclusion = bot();
  t.axioms.push_back(s);
  return t;
}

inline Structure pure_structure(int n) {
  Structure m;
  m.sig = sig_pure();
  m.carriers.resize(1);
  for (int i = 0; i < n; ++i) m.carriers[0].push_back("a" + std::to_string(i));
  return m;
}

// The canonical p.c. model of the distinct-constants theory: three named
// points, plus `extra` anonymous ones.
inline Structure const3_model(int extra = 0) {
  Structure m;
  m.sig = sig_const3();
  m.carriers.resize(1);
  for (int i = 0; i < 3; ++i) m.carriers[0].push_back("n" + std::to_string(i));
  for (int i = 0; i < extra; ++i) m.carriers[0].push_back("x" + std::to_string(i));
  m.const_interp = {0, 1, 2};
  return m;
}

// All structures over `sig` with carrier sizes given per sort. Relations
// range over every subset, functions over every table, constants over every
// element. Deterministic enumeration order.
std::vector<Structure> all_structures(const Signature& sig,
                                      const std::vector<int>& sizes);

// All structures with every sort size in [lo, hi].
std::vector<Structure> all_structures_up_to(const Signature& sig, int lo,
                                            int hi);

// Random positive formula over `context` with the given depth budget.
Formula random_formula(std::mt19937& rng, const Signature& sig,
                       const std::vector<TypedVar>& context, int depth);

// Random structure with sort sizes in [lo, hi].
Structure random_structure(std::mt19937& rng, const Signature& sig, int lo,
                           int hi);

}  // namespace poslog::testing
