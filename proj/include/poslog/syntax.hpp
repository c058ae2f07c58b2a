#pragma once

// Multi-sorted positive-logic ASTs: signatures, terms, formulas built from
// true/false/atoms/equality with &, | and exists, h-inductive sentences and
// theories. Everything here is immutable value data; the operations are pure.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace poslog {

using SortId = int;

struct Error {
  std::string code;     // e.g. "SortMismatch"
  std::string message;
  std::vector<int> path;  // child indices from the root to the offending node
  int line = -1, col = -1;

  std::string render() const;
};

template <typename T>
struct Result {
  std::optional<T> value;
  std::optional<Error> error;

  static Result ok(T v) { return {std::move(v), std::nullopt}; }
  static Result fail(Error e) { return {std::nullopt, std::move(e)}; }
  bool has_value() const { return value.has_value(); }
  explicit operator bool() const { return value.has_value(); }
  const T& operator*() const { return *value; }
};

struct Signature {
  struct Constant {
    std::string name;
    SortId sort;
    bool operator==(const Constant&) const = default;
  };
  struct Function {
    std::string name;
    std::vector<SortId> args;
    SortId result;
    bool operator==(const Function&) const = default;
  };
  struct Relation {
    std::string name;
    std::vector<SortId> args;
    bool operator==(const Relation&) const = default;
  };

  std::vector<std::string> sorts;  // declaration order is the canonical order
  std::vector<Constant> constants;
  std::vector<Function> functions;
  std::vector<Relation> relations;

  SortId sort_id(const std::string& name) const;
  int constant_id(const std::string& name) const;
  int function_id(const std::string& name) const;
  int relation_id(const std::string& name) const;
  bool has_symbol(const std::string& name) const;

  // Checks name uniqueness across symbol classes and that every sort in an
  // arity is declared. Returns an error describing the first violation.
  std::optional<Error> validate() const;

  bool operator==(const Signature&) const = default;
};

struct TypedVar {
  std::string name;
  SortId sort;
  bool operator==(const TypedVar&) const = default;
};

struct Term {
  enum class Kind { Var, Const, App };
  Kind kind = Kind::Var;
  std::string var;          // Kind::Var
  int sym = -1;             // constant or function id
  std::vector<Term> args;   // Kind::App

  static Term mk_var(std::string name);
  static Term mk_const(int id);
  static Term mk_app(int id, std::vector<Term> args);

  bool operator==(const Term&) const = default;
};

struct Formula {
  enum class Kind { Top, Bottom, Atom, Eq, And, Or, Exists };
  Kind kind = Kind::Top;
  int rel = -1;                   // Atom
  std::vector<Term> terms;        // Atom arguments, or the two Eq sides
  std::vector<TypedVar> binders;  // Exists (may be empty)
  std::vector<Formula> children;  // And/Or children, Exists body at [0]

  bool operator==(const Formula&) const = default;
};

Formula top();
Formula bot();
Formula atom(int rel, std::vector<Term> args);
Formula eq(Term lhs, Term rhs);
Formula conj(std::vector<Formula> children);   // And
Formula disj(std::vector<Formula> children);   // Or
Formula exists(std::vector<TypedVar> binders, Formula body);

// forall vars. premise -> conclusion; h-universal iff conclusion is Bottom.
struct Sentence {
  std::vector<TypedVar> vars;
  Formula premise;
  Formula conclusion;

  bool h_universal() const { return conclusion.kind == Formula::Kind::Bottom; }
  bool operator==(const Sentence&) const = default;
};

struct Theory {
  Signature sig;
  std::vector<Sentence> axioms;
};

// Free-variable sort context.
using SortContext = std::map<std::string, SortId>;

// --- structural keys ------------------------------------------------------
//
// A canonical serialization in which bound variables are numbered by binder
// position (de Bruijn style), so alpha-equivalent formulas get equal keys.
// Keys order first by node count, then lexicographically; this is the fixed
// structural order used everywhere downstream.
std::string term_key(const Term& t);
std::string formula_key(const Formula& f);
int node_count(const Term& t);
int node_count(const Formula& f);
int exists_var_depth(const Formula& f);  // max bound vars along any path

// True iff `a` precedes `b` in the canonical formula order.
bool canonical_less(const Formula& a, const Formula& b);

// --- operations -----------------------------------------------------------

// Sort-checks `f`, unifying free-variable sorts starting from `initial`.
// Unconstrained free variables default to the unique sort when the signature
// has exactly one, otherwise report an error.
Result<SortContext> well_sorted(const Formula& f, const Signature& sig,
                                const SortContext& initial = {});
Result<SortContext> well_sorted(const Sentence& s, const Signature& sig);
std::optional<Error> well_sorted(const Theory& t);

// Exists(vars, qf) with a quantifier-free body. Equivalent to the input on
// structures with nonempty carriers; disjunction pulls are not valid over
// empty carriers, which is inherent to the prenex form.
Formula to_prenex_existential(const Formula& f);

// Or of disjuncts Exists(vars_i, And(atoms)); equivalent to the input on all
// structures, including empty ones. Fails with ExponentialBlowup when the
// disjunct count exceeds `limit`.
Result<Formula> to_regular_disjunction(const Formula& f, int limit = 4096);

// Alpha-equivalent formulas map to identical trees: children of And/Or
// sorted and deduplicated by structural key, same-kind nestings flattened,
// units absorbed, Eq sides ordered, bound variables renamed v0, v1, ... in
// traversal order. Idempotent, and a congruence for eval.
Formula canonicalize(const Formula& f);

bool is_quantifier_free(const Formula& f);
std::vector<std::string> free_vars(const Formula& f);  // first-use order
bool uses_var(const Term& t, const std::string& name);
bool uses_var(const Formula& f, const std::string& name);

// Capture-avoiding substitution of terms for free variables.
Term substitute(const Term& t, const std::map<std::string, Term>& sub);
Formula substitute(const Formula& f, const std::map<std::string, Term>& sub);

// Concrete syntax (round-trips through the parser).
std::string to_string(const Term& t, const Signature& sig);
std::string to_string(const Formula& f, const Signature& sig);
std::string to_string(const Sentence& s, const Signature& sig);

}  // namespace poslog
