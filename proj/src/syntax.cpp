#include "poslog/syntax.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace poslog {

std::string Error::render() const {
  std::ostringstream os;
  os << code << ": " << message;
  if (line >= 0) os << " at " << line << ":" << col;
  if (!path.empty()) {
    os << " (path";
    for (int i : path) os << " " << i;
    os << ")";
  }
  return os.str();
}

SortId Signature::sort_id(const std::string& name) const {
  for (size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i] == name) return static_cast<SortId>(i);
  return -1;
}

int Signature::constant_id(const std::string& name) const {
  for (size_t i = 0; i < constants.size(); ++i)
    if (constants[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::function_id(const std::string& name) const {
  for (size_t i = 0; i < functions.size(); ++i)
    if (functions[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::relation_id(const std::string& name) const {
  for (size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Signature::has_symbol(const std::string& name) const {
  return constant_id(name) >= 0 || function_id(name) >= 0 ||
         relation_id(name) >= 0;
}

std::optional<Error> Signature::validate() const {
  std::set<std::string> seen;
  for (const auto& s : sorts)
    if (!seen.insert(s).second)
      return Error{"DuplicateSort", "sort '" + s + "' declared twice", {}};
  std::set<std::string> names;
  auto check_name = [&](const std::string& n) -> std::optional<Error> {
    if (!names.insert(n).second)
      return Error{"DuplicateSymbol", "symbol '" + n + "' declared twice", {}};
    return std::nullopt;
  };
  auto check_sort = [&](SortId s, const std::string& who) -> std::optional<Error> {
    if (s < 0 || s >= static_cast<SortId>(sorts.size()))
      return Error{"UnknownSort", "undeclared sort in arity of '" + who + "'", {}};
    return std::nullopt;
  };
  for (const auto& c : constants) {
    if (auto e = check_name(c.name)) return e;
    if (auto e = check_sort(c.sort, c.name)) return e;
  }
  for (const auto& f : functions) {
    if (auto e = check_name(f.name)) return e;
    for (SortId s : f.args)
      if (auto e = check_sort(s, f.name)) return e;
    if (auto e = check_sort(f.result, f.name)) return e;
  }
  for (const auto& r : relations) {
    if (auto e = check_name(r.name)) return e;
    for (SortId s : r.args)
      if (auto e = check_sort(s, r.name)) return e;
  }
  return std::nullopt;
}

Term Term::mk_var(std::string name) {
  Term t;
  t.kind = Kind::Var;
  t.var = std::move(name);
  return t;
}

Term Term::mk_const(int id) {
  Term t;
  t.kind = Kind::Const;
  t.sym = id;
  return t;
}

Term Term::mk_app(int id, std::vector<Term> args) {
  Term t;
  t.kind = Kind::App;
  t.sym = id;
  t.args = std::move(args);
  return t;
}

Formula top() { return Formula{}; }

Formula bot() {
  Formula f;
  f.kind = Formula::Kind::Bottom;
  return f;
}

Formula atom(int rel, std::vector<Term> args) {
  Formula f;
  f.kind = Formula::Kind::Atom;
  f.rel = rel;
  f.terms = std::move(args);
  return f;
}

Formula eq(Term lhs, Term rhs) {
  Formula f;
  f.kind = Formula::Kind::Eq;
  f.terms = {std::move(lhs), std::move(rhs)};
  return f;
}

Formula conj(std::vector<Formula> children) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.children = std::move(children);
  return f;
}

Formula disj(std::vector<Formula> children) {
  Formula f;
  f.kind = Formula::Kind::Or;
  f.children = std::move(children);
  return f;
}

Formula exists(std::vector<TypedVar> binders, Formula body) {
  Formula f;
  f.kind = Formula::Kind::Exists;
  f.binders = std::move(binders);
  f.children.push_back(std::move(body));
  return f;
}

// --- keys -------------------------------------------------------------

namespace {

void term_key_rec(const Term& t, const std::map<std::string, int>& bound,
                  std::string& out) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = bound.find(t.var);
      if (it != bound.end())
        out += "b" + std::to_string(it->second);
      else
        out += "v" + t.var;
      break;
    }
    case Term::Kind::Const:
      out += "c" + std::to_string(t.sym);
      break;
    case Term::Kind::App:
      out += "f" + std::to_string(t.sym) + "(";
      for (const auto& a : t.args) {
        term_key_rec(a, bound, out);
        out += ",";
      }
      out += ")";
      break;
  }
}

void formula_key_rec(const Formula& f, std::map<std::string, int> bound,
                     int& next_index, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top: out += "T"; break;
    case K::Bottom: out += "F"; break;
    case K::Atom:
      out += "R" + std::to_string(f.rel) + "(";
      for (const auto& t : f.terms) {
        term_key_rec(t, bound, out);
        out += ",";
      }
      out += ")";
      break;
    case K::Eq:
      out += "=(";
      term_key_rec(f.terms[0], bound, out);
      out += ",";
      term_key_rec(f.terms[1], bound, out);
      out += ")";
      break;
    case K::And:
    case K::Or:
      out += f.kind == K::And ? "A[" : "O[";
      for (const auto& c : f.children) {
        formula_key_rec(c, bound, next_index, out);
        out += ";";
      }
      out += "]";
      break;
    case K::Exists: {
      out += "E";
      for (const auto& b : f.binders) {
        bound[b.name] = next_index++;
        out += "s" + std::to_string(b.sort) + ".";
      }
      out += "(";
      formula_key_rec(f.children[0], bound, next_index, out);
      out += ")";
      break;
    }
  }
}

}  // namespace

std::string term_key(const Term& t) {
  std::string out;
  term_key_rec(t, {}, out);
  return out;
}

std::string formula_key(const Formula& f) {
  std::string out;
  int next = 0;
  formula_key_rec(f, {}, next, out);
  return out;
}

int node_count(const Term& t) {
  int n = 1;
  for (const auto& a : t.args) n += node_count(a);
  return n;
}

int node_count(const Formula& f) {
  int n = 1;
  for (const auto& t : f.terms) n += node_count(t);
  for (const auto& c : f.children) n += node_count(c);
  return n;
}

int exists_var_depth(const Formula& f) {
  int sub = 0;
  for (const auto& c : f.children) sub = std::max(sub, exists_var_depth(c));
  if (f.kind == Formula::Kind::Exists)
    sub += static_cast<int>(f.binders.size());
  return sub;
}

bool canonical_less(const Formula& a, const Formula& b) {
  int na = node_count(a), nb = node_count(b);
  if (na != nb) return na < nb;
  return formula_key(a) < formula_key(b);
}

// --- well-sortedness ----------------------------------------------------

namespace {

struct SortChecker {
  const Signature& sig;
  SortContext ctx;                    // free variables
  std::vector<SortContext> scopes;    // bound variables, innermost last
  std::optional<Error> err;

  std::optional<SortId> lookup_bound(const std::string& name) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return std::nullopt;
  }

  // Returns the sort of `t`, or -1 for a not-yet-constrained free variable.
  int term_sort(const Term& t, std::vector<int> path) {
    if (err) return -2;
    switch (t.kind) {
      case Term::Kind::Var: {
        if (auto s = lookup_bound(t.var)) return *s;
        auto it = ctx.find(t.var);
        if (it != ctx.end()) return it->second;
        return -1;
      }
      case Term::Kind::Const:
        if (t.sym < 0 || t.sym >= static_cast<int>(sig.constants.size())) {
          err = Error{"UnknownSymbol", "constant id out of range", path};
          return -2;
        }
        return sig.constants[t.sym].sort;
      case Term::Kind::App: {
        if (t.sym < 0 || t.sym >= static_cast<int>(sig.functions.size())) {
          err = Error{"UnknownSymbol", "function id out of range", path};
          return -2;
        }
        const auto& fn = sig.functions[t.sym];
        if (t.args.size() != fn.args.size()) {
          err = Error{"ArityMismatch",
                      "'" + fn.name + "' expects " +
                          std::to_string(fn.args.size()) + " arguments",
                      path};
          return -2;
        }
        for (size_t i = 0; i < t.args.size(); ++i) {
          auto p = path;
          p.push_back(static_cast<int>(i));
          if (!require_sort(t.args[i], fn.args[i], p)) return -2;
        }
        return fn.result;
      }
    }
    return -2;
  }

  // Constrains `t` to have sort `want`; free variables get unified.
  bool require_sort(const Term& t, SortId want, std::vector<int> path) {
    if (err) return false;
    if (t.kind == Term::Kind::Var && !lookup_bound(t.var)) {
      auto it = ctx.find(t.var);
      if (it == ctx.end()) {
        ctx[t.var] = want;
        return true;
      }
      if (it->second != want) {
        err = Error{"SortMismatch",
                    "variable '" + t.var + "' used at sorts '" +
                        sig.sorts[it->second] + "' and '" + sig.sorts[want] +
                        "'",
                    path};
        return false;
      }
      return true;
    }
    int got = term_sort(t, path);
    if (err) return false;
    if (got != want) {
      err = Error{"SortMismatch",
                  "term has sort '" + sig.sorts[got] + "', expected '" +
                      sig.sorts[want] + "'",
                  path};
      return false;
    }
    return true;
  }

  void check(const Formula& f, std::vector<int> path) {
    if (err) return;
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Top:
      case K::Bottom:
        break;
      case K::Atom: {
        if (f.rel < 0 || f.rel >= static_cast<int>(sig.relations.size())) {
          err = Error{"UnknownSymbol", "relation id out of range", path};
          return;
        }
        const auto& rel = sig.relations[f.rel];
        if (f.terms.size() != rel.args.size()) {
          err = Error{"ArityMismatch",
                      "'" + rel.name + "' expects " +
                          std::to_string(rel.args.size()) + " arguments",
                      path};
          return;
        }
        for (size_t i = 0; i < f.terms.size(); ++i) {
          auto p = path;
          p.push_back(static_cast<int>(i));
          if (!require_sort(f.terms[i], rel.args[i], p)) return;
        }
        break;
      }
      case K::Eq: {
        // Determine one side's sort, then constrain the other to match.
        int s0 = term_sort(f.terms[0], path);
        if (err) return;
        if (s0 >= 0) {
          require_sort(f.terms[0], s0, path);
          auto p = path;
          p.push_back(1);
          require_sort(f.terms[1], s0, p);
          return;
        }
        int s1 = term_sort(f.terms[1], path);
        if (err) return;
        if (s1 >= 0) {
          require_sort(f.terms[1], s1, path);
          require_sort(f.terms[0], s1, path);
          return;
        }
        // Both sides unconstrained free variables.
        if (sig.sorts.size() == 1) {
          require_sort(f.terms[0], 0, path);
          require_sort(f.terms[1], 0, path);
          return;
        }
        err = Error{"SortMismatch",
                    "cannot infer the sort of equality between free "
                    "variables; annotate via context",
                    path};
        break;
      }
      case K::And:
      case K::Or: {
        for (size_t i = 0; i < f.children.size(); ++i) {
          auto p = path;
          p.push_back(static_cast<int>(i));
          check(f.children[i], p);
          if (err) return;
        }
        break;
      }
      case K::Exists: {
        SortContext scope;
        for (const auto& b : f.binders) {
          if (b.sort < 0 || b.sort >= static_cast<SortId>(sig.sorts.size())) {
            err = Error{"UnknownSort",
                        "binder '" + b.name + "' has undeclared sort", path};
            return;
          }
          scope[b.name] = b.sort;
        }
        scopes.push_back(std::move(scope));
        auto p = path;
        p.push_back(0);
        check(f.children[0], p);
        scopes.pop_back();
        break;
      }
    }
  }

  // Residual pass: free variables still unconstrained after checking (can
  // only happen for vars appearing solely in Eq between two fresh vars,
  // already reported) need a default in the single-sorted case.
  void finish(const Formula& f) {
    if (err) return;
    for (const auto& v : free_vars(f)) {
      if (!ctx.count(v)) {
        if (sig.sorts.size() == 1)
          ctx[v] = 0;
        else
          err = Error{"SortMismatch",
                      "cannot infer sort of free variable '" + v + "'", {}};
      }
    }
  }
};

}  // namespace

Result<SortContext> well_sorted(const Formula& f, const Signature& sig,
                                const SortContext& initial) {
  SortChecker checker{sig, initial, {}, std::nullopt};
  checker.check(f, {});
  checker.finish(f);
  if (checker.err) return Result<SortContext>::fail(*checker.err);
  return Result<SortContext>::ok(std::move(checker.ctx));
}

Result<SortContext> well_sorted(const Sentence& s, const Signature& sig) {
  SortContext ctx;
  for (const auto& v : s.vars) ctx[v.name] = v.sort;
  auto pre = well_sorted(s.premise, sig, ctx);
  if (!pre) return pre;
  auto post = well_sorted(s.conclusion, sig, ctx);
  if (!post) return post;
  // Free variables of premise and conclusion must be among the universals.
  for (const auto& part : {s.premise, s.conclusion})
    for (const auto& v : free_vars(part))
      if (!ctx.count(v))
        return Result<SortContext>::fail(
            Error{"UnboundVariable",
                  "free variable '" + v + "' not bound by forall", {}});
  return Result<SortContext>::ok(ctx);
}

std::optional<Error> well_sorted(const Theory& t) {
  if (auto e = t.sig.validate()) return e;
  for (size_t i = 0; i < t.axioms.size(); ++i) {
    auto r = well_sorted(t.axioms[i], t.sig);
    if (!r) {
      auto e = *r.error;
      e.message = "axiom " + std::to_string(i) + ": " + e.message;
      return e;
    }
  }
  return std::nullopt;
}

// --- free variables, substitution ----------------------------------------

namespace {

void free_vars_term(const Term& t, const std::vector<std::string>& bound,
                    std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (std::find(bound.begin(), bound.end(), t.var) == bound.end() &&
        std::find(out.begin(), out.end(), t.var) == out.end())
      out.push_back(t.var);
  }
  for (const auto& a : t.args) free_vars_term(a, bound, out);
}

void free_vars_rec(const Formula& f, std::vector<std::string> bound,
                   std::vector<std::string>& out) {
  for (const auto& t : f.terms) free_vars_term(t, bound, out);
  if (f.kind == Formula::Kind::Exists)
    for (const auto& b : f.binders) bound.push_back(b.name);
  for (const auto& c : f.children) free_vars_rec(c, bound, out);
}

}  // namespace

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> out;
  free_vars_rec(f, {}, out);
  return out;
}

bool uses_var(const Term& t, const std::string& name) {
  if (t.kind == Term::Kind::Var && t.var == name) return true;
  for (const auto& a : t.args)
    if (uses_var(a, name)) return true;
  return false;
}

bool uses_var(const Formula& f, const std::string& name) {
  auto fv = free_vars(f);
  return std::find(fv.begin(), fv.end(), name) != fv.end();
}

Term substitute(const Term& t, const std::map<std::string, Term>& sub) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = sub.find(t.var);
      return it != sub.end() ? it->second : t;
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::App: {
      Term out = t;
      for (auto& a : out.args) a = substitute(a, sub);
      return out;
    }
  }
  return t;
}

namespace {

int fresh_counter_for(const Formula& f) {
  // Fresh names are w<N>; scan for the largest existing suffix.
  int best = 0;
  auto scan_name = [&best](const std::string& n) {
    if (n.size() >= 2 && n[0] == 'w') {
      bool digits = true;
      for (size_t i = 1; i < n.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(n[i]))) digits = false;
      if (digits) best = std::max(best, std::stoi(n.substr(1)) + 1);
    }
  };
  struct Walk {
    decltype(scan_name)& s;
    void term(const Term& t) {
      if (t.kind == Term::Kind::Var) s(t.var);
      for (const auto& a : t.args) term(a);
    }
    void formula(const Formula& f) {
      for (const auto& t : f.terms) term(t);
      for (const auto& b : f.binders) s(b.name);
      for (const auto& c : f.children) formula(c);
    }
  } walk{scan_name};
  walk.formula(f);
  return best;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Term>& sub) {
  using K = Formula::Kind;
  Formula out = f;
  switch (f.kind) {
    case K::Top:
    case K::Bottom:
      return out;
    case K::Atom:
    case K::Eq:
      for (auto& t : out.terms) t = substitute(t, sub);
      return out;
    case K::And:
    case K::Or:
      for (auto& c : out.children) c = substitute(c, sub);
      return out;
    case K::Exists: {
      std::map<std::string, Term> inner = sub;
      for (const auto& b : f.binders) inner.erase(b.name);
      // Rename binders that would capture a substituted variable.
      std::map<std::string, Term> rename;
      int fresh = fresh_counter_for(f);
      for (const auto& [from, to] : inner)
        (void)from, (void)to;
      for (auto& b : out.binders) {
        bool captures = false;
        for (const auto& [from, to] : inner)
          if (uses_var(to, b.name)) captures = true;
        if (captures) {
          std::string nn = "w" + std::to_string(fresh++);
          rename[b.name] = Term::mk_var(nn);
          b.name = nn;
        }
      }
      Formula body = out.children[0];
      if (!rename.empty()) body = substitute(body, rename);
      out.children[0] = substitute(body, inner);
      return out;
    }
  }
  return out;
}

// --- prenex ----------------------------------------------------------------

namespace {

struct Prenexer {
  int fresh = 0;

  // Returns (binders, quantifier-free body), binders renamed apart.
  std::pair<std::vector<TypedVar>, Formula> run(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Top:
      case K::Bottom:
      case K::Atom:
      case K::Eq:
        return {{}, f};
      case K::And:
      case K::Or: {
        std::vector<TypedVar> binders;
        std::vector<Formula> parts;
        for (const auto& c : f.children) {
          auto [bs, body] = run(c);
          for (auto& b : bs) binders.push_back(b);
          parts.push_back(std::move(body));
        }
        Formula out = f.kind == K::And ? conj(std::move(parts))
                                       : disj(std::move(parts));
        return {std::move(binders), std::move(out)};
      }
      case K::Exists: {
        // Rename this node's binders to globally fresh names first.
        std::map<std::string, Term> rename;
        std::vector<TypedVar> mine;
        for (const auto& b : f.binders) {
          std::string nn = "p" + std::to_string(fresh++);
          rename[b.name] = Term::mk_var(nn);
          mine.push_back({nn, b.sort});
        }
        Formula body = substitute(f.children[0], rename);
        auto [bs, qf] = run(body);
        for (auto& b : bs) mine.push_back(b);
        return {std::move(mine), std::move(qf)};
      }
    }
    return {{}, f};
  }
};

}  // namespace

Formula to_prenex_existential(const Formula& f) {
  Prenexer p;
  // Avoid clashes between the fresh p<N> names and any already present.
  std::vector<std::string> fv = free_vars(f);
  auto [binders, body] = p.run(f);
  return exists(std::move(binders), std::move(body));
}

// --- regular disjunction ----------------------------------------------------

namespace {

struct Disjunct {
  std::vector<TypedVar> binders;
  std::vector<Formula> atoms;  // atoms / equalities / Top / Bottom leaves
};

struct RegBuilder {
  int limit;
  int fresh = 0;
  std::optional<Error> err;

  std::vector<Disjunct> run(const Formula& f) {
    using K = Formula::Kind;
    if (err) return {};
    switch (f.kind) {
      case K::Top:
        return {Disjunct{}};
      case K::Bottom:
        return {};
      case K::Atom:
      case K::Eq:
        return {Disjunct{{}, {f}}};
      case K::Or: {
        std::vector<Disjunct> out;
        for (const auto& c : f.children) {
          auto sub = run(c);
          for (auto& d : sub) out.push_back(std::move(d));
          if (check_limit(out.size())) return {};
        }
        return out;
      }
      case K::And: {
        std::vector<Disjunct> acc = {Disjunct{}};
        for (const auto& c : f.children) {
          auto sub = run(c);
          if (err) return {};
          std::vector<Disjunct> next;
          for (const auto& a : acc)
            for (const auto& b : sub) {
              Disjunct d = a;
              for (const auto& v : b.binders) d.binders.push_back(v);
              for (const auto& at : b.atoms) d.atoms.push_back(at);
              next.push_back(std::move(d));
              if (check_limit(next.size())) return {};
            }
          acc = std::move(next);
        }
        return acc;
      }
      case K::Exists: {
        std::map<std::string, Term> rename;
        std::vector<TypedVar> mine;
        for (const auto& b : f.binders) {
          std::string nn = "q" + std::to_string(fresh++);
          rename[b.name] = Term::mk_var(nn);
          mine.push_back({nn, b.sort});
        }
        Formula body = substitute(f.children[0], rename);
        auto sub = run(body);
        for (auto& d : sub) {
          std::vector<TypedVar> bs = mine;
          for (const auto& v : d.binders) bs.push_back(v);
          d.binders = std::move(bs);
        }
        return sub;
      }
    }
    return {};
  }

  bool check_limit(size_t n) {
    if (static_cast<int>(n) > limit) {
      err = Error{"ExponentialBlowup",
                  "regular disjunction exceeds " + std::to_string(limit) +
                      " disjuncts; raise the limit", {}};
      return true;
    }
    return false;
  }
};

}  // namespace

Result<Formula> to_regular_disjunction(const Formula& f, int limit) {
  RegBuilder rb{limit};
  auto ds = rb.run(f);
  if (rb.err) return Result<Formula>::fail(*rb.err);
  std::vector<Formula> parts;
  for (auto& d : ds) {
    // Drop binders that no atom mentions; an unused binder only asserts the
    // sort is inhabited, which we keep as an explicit v = v atom.
    std::vector<Formula> atoms = d.atoms;
    std::vector<TypedVar> used;
    for (const auto& b : d.binders) {
      bool hit = false;
      for (const auto& a : atoms)
        if (uses_var(a, b.name)) hit = true;
      if (!hit)
        atoms.push_back(eq(Term::mk_var(b.name), Term::mk_var(b.name)));
      used.push_back(b);
    }
    Formula body = atoms.empty() ? top()
                   : atoms.size() == 1 ? atoms[0]
                                       : conj(std::move(atoms));
    parts.push_back(exists(std::move(used), std::move(body)));
  }
  return Result<Formula>::ok(disj(std::move(parts)));
}

// --- canonicalization -------------------------------------------------------

namespace {

Formula canon_rec(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top:
    case K::Bottom:
    case K::Atom:
      return f;
    case K::Eq: {
      Formula out = f;
      if (term_key(out.terms[1]) < term_key(out.terms[0]))
        std::swap(out.terms[0], out.terms[1]);
      return out;
    }
    case K::And:
    case K::Or: {
      const bool is_and = f.kind == K::And;
      std::vector<Formula> kids;
      for (const auto& c : f.children) {
        Formula cc = canon_rec(c);
        if (cc.kind == f.kind) {
          for (auto& g : cc.children) kids.push_back(std::move(g));
        } else {
          kids.push_back(std::move(cc));
        }
      }
      std::vector<Formula> keep;
      for (auto& k : kids) {
        if (is_and && k.kind == K::Top) continue;
        if (!is_and && k.kind == K::Bottom) continue;
        if (is_and && k.kind == K::Bottom) return bot();
        if (!is_and && k.kind == K::Top) return top();
        keep.push_back(std::move(k));
      }
      std::stable_sort(keep.begin(), keep.end(),
                       [](const Formula& a, const Formula& b) {
                         return canonical_less(a, b);
                       });
      keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
      if (keep.empty()) return is_and ? top() : bot();
      if (keep.size() == 1) return keep[0];
      return is_and ? conj(std::move(keep)) : disj(std::move(keep));
    }
    case K::Exists: {
      Formula body = canon_rec(f.children[0]);
      std::vector<TypedVar> binders = f.binders;
      while (body.kind == K::Exists) {  // merge directly nested Exists
        for (const auto& b : body.binders) binders.push_back(b);
        body = body.children[0];
      }
      if (binders.empty()) return body;
      return exists(std::move(binders), std::move(body));
    }
  }
  return f;
}

// Renames bound variables to v0, v1, ... in pre-order traversal.
struct Renamer {
  int next = 0;

  Formula run(const Formula& f, std::map<std::string, std::string> env) {
    using K = Formula::Kind;
    Formula out = f;
    switch (f.kind) {
      case K::Top:
      case K::Bottom:
        return out;
      case K::Atom:
      case K::Eq:
        for (auto& t : out.terms) t = rename_term(t, env);
        return out;
      case K::And:
      case K::Or:
        for (auto& c : out.children) c = run(c, env);
        return out;
      case K::Exists: {
        for (auto& b : out.binders) {
          std::string nn = "v" + std::to_string(next++);
          env[b.name] = nn;
          b.name = nn;
        }
        out.children[0] = run(f.children[0], env);
        return out;
      }
    }
    return out;
  }

  static Term rename_term(const Term& t,
                          const std::map<std::string, std::string>& env) {
    if (t.kind == Term::Kind::Var) {
      auto it = env.find(t.var);
      if (it != env.end()) return Term::mk_var(it->second);
      return t;
    }
    Term out = t;
    for (auto& a : out.args) a = rename_term(a, env);
    return out;
  }
};

}  // namespace

Formula canonicalize(const Formula& f) {
  Formula c = canon_rec(f);
  Renamer r;
  return r.run(c, {});
}

bool is_quantifier_free(const Formula& f) {
  if (f.kind == Formula::Kind::Exists) return false;
  for (const auto& c : f.children)
    if (!is_quantifier_free(c)) return false;
  return true;
}

// --- printing ----------------------------------------------------------------

std::string to_string(const Term& t, const Signature& sig) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.var;
    case Term::Kind::Const:
      return sig.constants[t.sym].name;
    case Term::Kind::App: {
      std::string out = sig.functions[t.sym].name + "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.args[i], sig);
      }
      return out + ")";
    }
  }
  return "?";
}

namespace {

// prec: 0 = top level, 1 = inside |, 2 = inside &
std::string print_rec(const Formula& f, const Signature& sig, int prec) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top: return "true";
    case K::Bottom: return "false";
    case K::Atom: {
      std::string out = sig.relations[f.rel].name + "(";
      for (size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += ", ";
        out += to_string(f.terms[i], sig);
      }
      return out + ")";
    }
    case K::Eq:
      return to_string(f.terms[0], sig) + " = " + to_string(f.terms[1], sig);
    case K::And: {
      if (f.children.empty()) return "true";
      std::string out;
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += " & ";
        out += print_rec(f.children[i], sig, 2);
      }
      if (prec > 2) return "(" + out + ")";
      return out;
    }
    case K::Or: {
      if (f.children.empty()) return "false";
      std::string out;
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += " | ";
        out += print_rec(f.children[i], sig, 1);
      }
      if (prec >= 2) return "(" + out + ")";
      return out;
    }
    case K::Exists: {
      std::string out = "exists ";
      for (size_t i = 0; i < f.binders.size(); ++i) {
        if (i) out += ", ";
        out += f.binders[i].name + ":" + sig.sorts[f.binders[i].sort];
      }
      if (f.binders.empty()) out = "exists ";  // legal empty binder
      out += ". " + print_rec(f.children[0], sig, 0);
      if (prec >= 1) return "(" + out + ")";
      return out;
    }
  }
  return "?";
}

}  // namespace

std::string to_string(const Formula& f, const Signature& sig) {
  return print_rec(f, sig, 0);
}

std::string to_string(const Sentence& s, const Signature& sig) {
  std::string out;
  if (!s.vars.empty()) {
    out += "forall ";
    for (size_t i = 0; i < s.vars.size(); ++i) {
      if (i) out += ", ";
      out += s.vars[i].name + ":" + sig.sorts[s.vars[i].sort];
    }
    out += " . ";
  }
  out += print_rec(s.premise, sig, 1) + " -> " + print_rec(s.conclusion, sig, 1);
  return out;
}

}  // namespace poslog
