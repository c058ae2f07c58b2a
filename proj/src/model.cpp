#include "poslog/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace poslog {

int Structure::total_size() const {
  int n = 0;
  for (const auto& c : carriers) n += static_cast<int>(c.size());
  return n;
}

int Structure::element_id(SortId s, const std::string& name) const {
  const auto& c = carriers[s];
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] == name) return static_cast<int>(i);
  return -1;
}

int Structure::tuple_index(int fn, const std::vector<int>& args) const {
  const auto& arity = sig.functions[fn].args;
  int idx = 0;
  for (size_t i = 0; i < arity.size(); ++i)
    idx = idx * carrier_size(arity[i]) + args[i];
  return idx;
}

int Structure::apply(int fn, const std::vector<int>& args) const {
  return func_interp[fn][tuple_index(fn, args)];
}

bool Structure::holds(int rel, const std::vector<int>& args) const {
  return rel_interp[rel].count(args) > 0;
}

std::optional<Error> Structure::validate() const {
  if (auto e = sig.validate()) return e;
  if (carriers.size() != sig.sorts.size() ||
      const_interp.size() != sig.constants.size() ||
      func_interp.size() != sig.functions.size() ||
      rel_interp.size() != sig.relations.size())
    return Error{"PartialInterpretation", "interpretation tables missing", {}};
  for (size_t s = 0; s < carriers.size(); ++s) {
    std::set<std::string> seen;
    for (const auto& e : carriers[s])
      if (!seen.insert(e).second)
        return Error{"DuplicateElement",
                     "element '" + e + "' declared twice in sort '" +
                         sig.sorts[s] + "'", {}};
  }
  for (size_t c = 0; c < sig.constants.size(); ++c) {
    int v = const_interp[c];
    if (v < 0 || v >= carrier_size(sig.constants[c].sort))
      return Error{"PartialInterpretation",
                   "constant '" + sig.constants[c].name + "' uninterpreted", {}};
  }
  for (size_t f = 0; f < sig.functions.size(); ++f) {
    const auto& fn = sig.functions[f];
    size_t expect = 1;
    for (SortId s : fn.args) expect *= static_cast<size_t>(carrier_size(s));
    if (func_interp[f].size() != expect)
      return Error{"PartialInterpretation",
                   "function '" + fn.name + "' table incomplete", {}};
    for (int v : func_interp[f])
      if (v < 0 || v >= carrier_size(fn.result))
        return Error{"PartialInterpretation",
                     "function '" + fn.name + "' maps outside its sort", {}};
  }
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    const auto& rel = sig.relations[r];
    for (const auto& tup : rel_interp[r]) {
      if (tup.size() != rel.args.size())
        return Error{"ArityMismatch",
                     "tuple arity mismatch in '" + rel.name + "'", {}};
      for (size_t i = 0; i < tup.size(); ++i)
        if (tup[i] < 0 || tup[i] >= carrier_size(rel.args[i]))
          return Error{"UnknownElement",
                       "tuple out of range in '" + rel.name + "'", {}};
    }
  }
  return std::nullopt;
}

StructureMap StructureMap::empty_for(const Structure& src) {
  StructureMap m;
  m.img.resize(src.carriers.size());
  for (size_t s = 0; s < src.carriers.size(); ++s)
    m.img[s].assign(src.carriers[s].size(), -1);
  return m;
}

StructureMap StructureMap::identity_for(const Structure& s) {
  StructureMap m = empty_for(s);
  for (auto& v : m.img)
    std::iota(v.begin(), v.end(), 0);
  return m;
}

bool StructureMap::total() const {
  for (const auto& v : img)
    for (int x : v)
      if (x < 0) return false;
  return true;
}

int eval_term(const Structure& m, const Term& t, const Assignment& a) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = a.find(t.var);
      return it == a.end() ? -1 : it->second;
    }
    case Term::Kind::Const:
      return m.const_interp[t.sym];
    case Term::Kind::App: {
      std::vector<int> args;
      args.reserve(t.args.size());
      for (const auto& arg : t.args) {
        int v = eval_term(m, arg, a);
        if (v < 0) return -1;
        args.push_back(v);
      }
      return m.apply(t.sym, args);
    }
  }
  return -1;
}

bool eval(const Structure& m, const Formula& f, const Assignment& a) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top:
      return true;
    case K::Bottom:
      return false;
    case K::Atom: {
      std::vector<int> args;
      args.reserve(f.terms.size());
      for (const auto& t : f.terms) args.push_back(eval_term(m, t, a));
      return m.holds(f.rel, args);
    }
    case K::Eq:
      return eval_term(m, f.terms[0], a) == eval_term(m, f.terms[1], a);
    case K::And:
      for (const auto& c : f.children)
        if (!eval(m, c, a)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children)
        if (eval(m, c, a)) return true;
      return false;
    case K::Exists: {
      if (f.binders.empty()) return eval(m, f.children[0], a);
      // Iterate the finite carrier product in lex order.
      std::vector<int> idx(f.binders.size(), 0);
      for (const auto& b : f.binders)
        if (m.carrier_size(b.sort) == 0) return false;
      Assignment inner = a;
      while (true) {
        for (size_t i = 0; i < f.binders.size(); ++i)
          inner[f.binders[i].name] = idx[i];
        if (eval(m, f.children[0], inner)) return true;
        int pos = static_cast<int>(idx.size()) - 1;
        while (pos >= 0) {
          if (++idx[pos] < m.carrier_size(f.binders[pos].sort)) break;
          idx[pos] = 0;
          --pos;
        }
        if (pos < 0) return false;
      }
    }
  }
  return false;
}

std::vector<Assignment> all_assignments(const Structure& m,
                                        const std::vector<TypedVar>& vars) {
  std::vector<Assignment> out;
  for (const auto& v : vars)
    if (m.carrier_size(v.sort) == 0) return out;
  std::vector<int> idx(vars.size(), 0);
  while (true) {
    Assignment a;
    for (size_t i = 0; i < vars.size(); ++i) a[vars[i].name] = idx[i];
    out.push_back(std::move(a));
    int pos = static_cast<int>(idx.size()) - 1;
    while (pos >= 0) {
      if (++idx[pos] < m.carrier_size(vars[pos].sort)) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (vars.empty()) out.resize(1);
  return out;
}

ModelCheck check_model(const Structure& m, const Theory& t) {
  for (size_t i = 0; i < t.axioms.size(); ++i) {
    const auto& ax = t.axioms[i];
    for (const auto& a : all_assignments(m, ax.vars)) {
      if (eval(m, ax.premise, a) && !eval(m, ax.conclusion, a))
        return ModelCheck{false, static_cast<int>(i), a};
    }
  }
  return ModelCheck{};
}

// --- positive diagram -------------------------------------------------------

Diagram positive_diagram(const Structure& m) {
  Diagram d;
  d.extended = m.sig;
  d.elem_const.resize(m.carriers.size());
  for (size_t s = 0; s < m.carriers.size(); ++s) {
    for (const auto& name : m.carriers[s]) {
      std::string cname = name;
      while (d.extended.has_symbol(cname)) cname = "_" + cname;
      d.elem_const[s].push_back(static_cast<int>(d.extended.constants.size()));
      d.extended.constants.push_back({cname, static_cast<SortId>(s)});
    }
  }
  auto ec = [&](SortId s, int e) {
    return Term::mk_const(d.elem_const[s][e]);
  };
  // e = e for every element, then constant facts, then function facts, then
  // relation facts; each family in canonical order.
  for (size_t s = 0; s < m.carriers.size(); ++s)
    for (size_t e = 0; e < m.carriers[s].size(); ++e)
      d.facts.push_back(eq(ec(static_cast<SortId>(s), static_cast<int>(e)),
                           ec(static_cast<SortId>(s), static_cast<int>(e))));
  for (size_t c = 0; c < m.sig.constants.size(); ++c)
    d.facts.push_back(eq(Term::mk_const(static_cast<int>(c)),
                         ec(m.sig.constants[c].sort, m.const_interp[c])));
  for (size_t f = 0; f < m.sig.functions.size(); ++f) {
    const auto& fn = m.sig.functions[f];
    std::vector<TypedVar> vars;
    for (size_t i = 0; i < fn.args.size(); ++i)
      vars.push_back({"i" + std::to_string(i), fn.args[i]});
    for (const auto& a : all_assignments(m, vars)) {
      std::vector<int> args;
      std::vector<Term> targs;
      for (size_t i = 0; i < fn.args.size(); ++i) {
        int e = a.at("i" + std::to_string(i));
        args.push_back(e);
        targs.push_back(ec(fn.args[i], e));
      }
      int res = m.apply(static_cast<int>(f), args);
      d.facts.push_back(eq(Term::mk_app(static_cast<int>(f), targs),
                           ec(fn.result, res)));
    }
  }
  for (size_t r = 0; r < m.sig.relations.size(); ++r) {
    const auto& rel = m.sig.relations[r];
    for (const auto& tup : m.rel_interp[r]) {
      std::vector<Term> targs;
      for (size_t i = 0; i < tup.size(); ++i)
        targs.push_back(ec(rel.args[i], tup[i]));
      d.facts.push_back(atom(static_cast<int>(r), targs));
    }
  }
  return d;
}

// --- directed union ---------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Result<DirectedUnion> directed_union(const std::vector<Structure>& chain,
                                     const std::vector<StructureMap>& links) {
  if (chain.empty())
    return Result<DirectedUnion>::fail(Error{"EmptyChain", "no structures", {}});
  if (links.size() + 1 != chain.size())
    return Result<DirectedUnion>::fail(
        Error{"ChainMismatch", "need one link per consecutive pair", {}});
  const Signature& sig = chain[0].sig;
  for (const auto& m : chain)
    if (!(m.sig == sig))
      return Result<DirectedUnion>::fail(
          Error{"SignatureMismatch", "chain stages use different signatures", {}});

  const int stages = static_cast<int>(chain.size());
  const int nsorts = static_cast<int>(sig.sorts.size());

  // Global ids for the disjoint union, per sort.
  std::vector<std::vector<std::vector<int>>> gid(nsorts);  // [sort][stage][el]
  std::vector<int> count(nsorts, 0);
  for (int s = 0; s < nsorts; ++s) {
    gid[s].resize(stages);
    for (int i = 0; i < stages; ++i) {
      gid[s][i].resize(chain[i].carriers[s].size());
      for (size_t e = 0; e < chain[i].carriers[s].size(); ++e)
        gid[s][i][e] = count[s]++;
    }
  }

  // a ~ f(a) for every link.
  std::vector<UnionFind> uf;
  for (int s = 0; s < nsorts; ++s) uf.emplace_back(count[s]);
  for (int i = 0; i + 1 < stages; ++i) {
    const auto& f = links[i];
    if (f.img.size() != static_cast<size_t>(nsorts))
      return Result<DirectedUnion>::fail(
          Error{"ChainMismatch", "link " + std::to_string(i) + " malformed", {}});
    for (int s = 0; s < nsorts; ++s) {
      if (f.img[s].size() != chain[i].carriers[s].size())
        return Result<DirectedUnion>::fail(
            Error{"ChainMismatch", "link " + std::to_string(i) + " malformed", {}});
      for (size_t e = 0; e < f.img[s].size(); ++e) {
        int t = f.img[s][e];
        if (t < 0 || t >= chain[i + 1].carrier_size(s))
          return Result<DirectedUnion>::fail(
              Error{"NotAHomomorphism",
                    "link " + std::to_string(i) + " is not total", {}});
        uf[s].unite(gid[s][i][e], gid[s][i + 1][t]);
      }
    }
  }

  // Classes ordered by (first stage containing a representative, element
  // index at that stage); the class name is that first representative's.
  DirectedUnion out;
  out.union_structure.sig = sig;
  out.union_structure.carriers.resize(nsorts);
  std::vector<std::map<int, int>> class_index(nsorts);  // root -> class id
  for (int s = 0; s < nsorts; ++s) {
    for (int i = 0; i < stages; ++i) {
      for (size_t e = 0; e < chain[i].carriers[s].size(); ++e) {
        int root = uf[s].find(gid[s][i][e]);
        if (!class_index[s].count(root)) {
          int id = static_cast<int>(out.union_structure.carriers[s].size());
          class_index[s][root] = id;
          std::string name = chain[i].carriers[s][e];
          // Disambiguate collisions across stages.
          for (const auto& existing : out.union_structure.carriers[s])
            if (existing == name) name = "s" + std::to_string(i) + "_" + name;
          out.union_structure.carriers[s].push_back(name);
        }
      }
    }
  }
  auto cls = [&](int s, int stage, int e) {
    return class_index[s].at(uf[s].find(gid[s][stage][e]));
  };

  // Constants via the last stage (every class has a representative there
  // only for elements that flow forward; constants always do).
  out.union_structure.const_interp.resize(sig.constants.size());
  for (size_t c = 0; c < sig.constants.size(); ++c)
    out.union_structure.const_interp[c] =
        cls(sig.constants[c].sort, 0, chain[0].const_interp[c]);

  // Functions: evaluate on representatives at the latest stage where every
  // argument class has one. For a chain, the last stage always works when
  // classes are pushed forward along the links; push images forward.
  // forward[s][stage][e] = image of (stage, e) at the final stage.
  std::vector<std::vector<std::vector<int>>> fwd(nsorts);
  for (int s = 0; s < nsorts; ++s) {
    fwd[s].resize(stages);
    for (int i = 0; i < stages; ++i) {
      fwd[s][i].resize(chain[i].carriers[s].size());
      for (size_t e = 0; e < chain[i].carriers[s].size(); ++e) {
        int cur = static_cast<int>(e);
        for (int j = i; j + 1 < stages; ++j) cur = links[j].img[s][cur];
        fwd[s][i][e] = cur;
      }
    }
  }
  const Structure& last = chain.back();
  // Every union class has a representative in the last stage; record one.
  std::vector<std::map<int, int>> rep(nsorts);
  for (int s = 0; s < nsorts; ++s)
    for (int i = 0; i < stages; ++i)
      for (size_t e = 0; e < chain[i].carriers[s].size(); ++e) {
        int c = cls(s, i, static_cast<int>(e));
        if (!rep[s].count(c)) rep[s][c] = fwd[s][i][e];
      }
  out.union_structure.func_interp.resize(sig.functions.size());
  for (size_t f = 0; f < sig.functions.size(); ++f) {
    const auto& fn = sig.functions[f];
    std::vector<int> sizes;
    for (SortId s : fn.args)
      sizes.push_back(out.union_structure.carrier_size(s));
    size_t total = 1;
    for (int n : sizes) total *= static_cast<size_t>(n);
    out.union_structure.func_interp[f].assign(total, 0);
    std::vector<int> idx(fn.args.size(), 0);
    for (size_t flat = 0; flat < total; ++flat) {
      std::vector<int> args;
      for (size_t i = 0; i < fn.args.size(); ++i)
        args.push_back(rep[fn.args[i]].at(idx[i]));
      int res = last.apply(static_cast<int>(f), args);
      out.union_structure.func_interp[f][flat] =
          cls(fn.result, stages - 1, res);
      for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
        if (++idx[i] < sizes[i]) break;
        idx[i] = 0;
      }
      if (fn.args.empty()) break;
    }
  }

  // Relations: a class tuple holds iff some stage holds on representatives.
  out.union_structure.rel_interp.resize(sig.relations.size());
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    const auto& rel = sig.relations[r];
    for (int i = 0; i < stages; ++i)
      for (const auto& tup : chain[i].rel_interp[r]) {
        std::vector<int> ctup;
        for (size_t j = 0; j < tup.size(); ++j)
          ctup.push_back(cls(rel.args[j], i, tup[j]));
        out.union_structure.rel_interp[r].insert(ctup);
      }
  }

  for (int i = 0; i < stages; ++i) {
    StructureMap p = StructureMap::empty_for(chain[i]);
    for (int s = 0; s < nsorts; ++s)
      for (size_t e = 0; e < chain[i].carriers[s].size(); ++e)
        p.img[s][e] = cls(s, i, static_cast<int>(e));
    out.projections.push_back(std::move(p));
  }
  return Result<DirectedUnion>::ok(std::move(out));
}

// --- hyperimaginary quotient -----------------------------------------------

namespace {

std::vector<std::vector<int>> sort_tuples(const Structure& m,
                                          const std::vector<SortId>& sorts) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(sorts.size(), 0);
  for (SortId s : sorts)
    if (m.carrier_size(s) == 0) return out;
  while (true) {
    out.push_back(idx);
    int pos = static_cast<int>(idx.size()) - 1;
    while (pos >= 0) {
      if (++idx[pos] < m.carrier_size(sorts[pos])) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (sorts.empty()) out.resize(1);
  return out;
}

bool equiv_holds(const Structure& m, const EquivSpec& e,
                 const std::vector<int>& a, const std::vector<int>& b) {
  Assignment asg;
  for (size_t i = 0; i < a.size(); ++i) {
    asg["x" + std::to_string(i)] = a[i];
    asg["y" + std::to_string(i)] = b[i];
  }
  return eval(m, e.relation, asg);
}

std::string tuple_name(const Structure& m, const EquivSpec& e,
                       const std::vector<int>& t) {
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += "-";
    out += m.carriers[e.sorts[i]][t[i]];
  }
  return out;
}

}  // namespace

Result<Quotient> quotient_heq(const Structure& m, const EquivSpec& e,
                              const std::vector<QuotientTemplate>& family) {
  auto tuples = sort_tuples(m, e.sorts);
  const int n = static_cast<int>(tuples.size());

  // E must evaluate to an equivalence relation on the tuple space.
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rel[i][j] = equiv_holds(m, e, tuples[i], tuples[j]);
  for (int i = 0; i < n; ++i)
    if (!rel[i][i])
      return Result<Quotient>::fail(
          Error{"NotReflexive", "E fails at (" + tuple_name(m, e, tuples[i]) + ")", {}});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j] && !rel[j][i])
        return Result<Quotient>::fail(
            Error{"NotSymmetric",
                  "E(" + tuple_name(m, e, tuples[i]) + ", " +
                      tuple_name(m, e, tuples[j]) + ") holds one way", {}});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k] && !rel[i][k])
          return Result<Quotient>::fail(
              Error{"NotTransitive",
                    "E fails to compose at (" + tuple_name(m, e, tuples[i]) +
                        ", " + tuple_name(m, e, tuples[j]) + ", " +
                        tuple_name(m, e, tuples[k]) + ")", {}});

  Quotient q;
  q.tuples = tuples;
  q.class_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (q.class_of[i] >= 0) continue;
    int id = static_cast<int>(q.classes.size());
    q.classes.push_back({});
    for (int j = i; j < n; ++j)
      if (rel[i][j]) {
        q.class_of[j] = id;
        q.classes[id].push_back(j);
      }
  }

  // Extended structure: original sorts and symbols, plus S_E and the R_phi.
  Structure out = m;
  q.class_sort = static_cast<SortId>(out.sig.sorts.size());
  std::string class_sort_name = "classE";
  while (out.sig.sort_id(class_sort_name) >= 0)
    class_sort_name = "_" + class_sort_name;
  out.sig.sorts.push_back(class_sort_name);
  out.carriers.push_back({});
  for (size_t c = 0; c < q.classes.size(); ++c)
    out.carriers[q.class_sort].push_back(
        "q" + std::to_string(c) + "_" + tuple_name(m, e, tuples[q.classes[c][0]]));

  const int m_arity = static_cast<int>(e.sorts.size());
  // Enumerate index vectors with per-position limits, calling fn on each;
  // fn returning true stops the walk early.
  auto walk = [](const std::vector<int>& limits, auto&& fn) {
    for (int l : limits)
      if (l == 0) return;
    std::vector<int> idx(limits.size(), 0);
    while (true) {
      if (fn(idx)) return;
      int pos = static_cast<int>(idx.size()) - 1;
      while (pos >= 0) {
        if (++idx[pos] < limits[pos]) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) return;
    }
  };

  for (const auto& tpl : family) {
    Signature::Relation r;
    r.name = tpl.name;
    while (out.sig.has_symbol(r.name)) r.name = "_" + r.name;
    r.args = tpl.real;
    for (int j = 0; j < tpl.classes; ++j) r.args.push_back(q.class_sort);
    out.sig.relations.push_back(r);
    out.rel_interp.push_back({});
    int rid = static_cast<int>(out.sig.relations.size()) - 1;

    // R_phi(real..., [c1], ..., [ck]) iff some representatives satisfy phi.
    std::vector<TypedVar> real_vars;
    for (size_t i = 0; i < tpl.real.size(); ++i)
      real_vars.push_back({"r" + std::to_string(i), tpl.real[i]});
    for (const auto& ra : all_assignments(m, real_vars)) {
      std::vector<int> class_limits(tpl.classes,
                                    static_cast<int>(q.classes.size()));
      walk(class_limits, [&](const std::vector<int>& class_idx) {
        std::vector<int> rep_limits;
        for (int j = 0; j < tpl.classes; ++j)
          rep_limits.push_back(static_cast<int>(q.classes[class_idx[j]].size()));
        bool found = false;
        walk(rep_limits, [&](const std::vector<int>& rep_pos) {
          Assignment asg = ra;
          for (int j = 0; j < tpl.classes; ++j) {
            const auto& tup = tuples[q.classes[class_idx[j]][rep_pos[j]]];
            for (int i = 0; i < m_arity; ++i)
              asg["k" + std::to_string(j) + "_" + std::to_string(i)] = tup[i];
          }
          found = eval(m, tpl.phi, asg);
          return found;
        });
        if (found) {
          std::vector<int> tup;
          for (size_t i = 0; i < tpl.real.size(); ++i)
            tup.push_back(ra.at("r" + std::to_string(i)));
          for (int j = 0; j < tpl.classes; ++j) tup.push_back(class_idx[j]);
          out.rel_interp[rid].insert(tup);
        }
        return false;
      });
    }
  }

  q.extended = std::move(out);
  return Result<Quotient>::ok(std::move(q));
}

Result<StructureMap> lift_automorphism(const Structure& m,
                                       const StructureMap& f,
                                       const EquivSpec& e, const Quotient& q) {
  // f must be a bijection on every sort (automorphism verification of the
  // preservation conditions is the morphism module's check; here we need
  // bijectivity to build the lift).
  for (size_t s = 0; s < m.carriers.size(); ++s) {
    std::vector<bool> hit(m.carriers[s].size(), false);
    if (f.img[s].size() != m.carriers[s].size())
      return Result<StructureMap>::fail(
          Error{"NotAnAutomorphism", "map is not total", {}});
    for (int v : f.img[s]) {
      if (v < 0 || v >= m.carrier_size(static_cast<SortId>(s)) || hit[v])
        return Result<StructureMap>::fail(
            Error{"NotAnAutomorphism", "map is not a bijection", {}});
      hit[v] = true;
    }
  }

  const auto& mq = q.extended;
  StructureMap lifted;
  lifted.img.resize(mq.carriers.size());
  for (size_t s = 0; s < m.carriers.size(); ++s) lifted.img[s] = f.img[s];
  lifted.img[q.class_sort].assign(q.classes.size(), -1);

  // Index tuples for lookup.
  std::map<std::vector<int>, int> tuple_id;
  for (size_t i = 0; i < q.tuples.size(); ++i) tuple_id[q.tuples[i]] = static_cast<int>(i);
  for (size_t c = 0; c < q.classes.size(); ++c) {
    const auto& tup = q.tuples[q.classes[c][0]];
    std::vector<int> mapped;
    for (size_t i = 0; i < tup.size(); ++i)
      mapped.push_back(f.img[e.sorts[i]][tup[i]]);
    lifted.img[q.class_sort][c] = q.class_of[tuple_id.at(mapped)];
  }

  // Well-definedness: all members of a class must map into the same class.
  for (size_t c = 0; c < q.classes.size(); ++c)
    for (int t : q.classes[c]) {
      std::vector<int> mapped;
      for (size_t i = 0; i < q.tuples[t].size(); ++i)
        mapped.push_back(f.img[e.sorts[i]][q.tuples[t][i]]);
      if (q.class_of[tuple_id.at(mapped)] != lifted.img[q.class_sort][c])
        return Result<StructureMap>::fail(
            Error{"NotAnAutomorphism",
                  "the lift of f is not well-defined on E-classes", {}});
    }
  return Result<StructureMap>::ok(std::move(lifted));
}

// --- printing ---------------------------------------------------------------

std::string to_string(const Structure& m) {
  std::ostringstream os;
  os << "structure M\n";
  for (size_t s = 0; s < m.sig.sorts.size(); ++s) {
    os << "sort " << m.sig.sorts[s] << " = { ";
    for (size_t e = 0; e < m.carriers[s].size(); ++e) {
      if (e) os << ", ";
      os << m.carriers[s][e];
    }
    os << " }\n";
  }
  for (size_t c = 0; c < m.sig.constants.size(); ++c)
    os << "const " << m.sig.constants[c].name << " = "
       << m.carriers[m.sig.constants[c].sort][m.const_interp[c]] << "\n";
  for (size_t f = 0; f < m.sig.functions.size(); ++f) {
    const auto& fn = m.sig.functions[f];
    os << "fun " << fn.name << " = { ";
    std::vector<TypedVar> vars;
    for (size_t i = 0; i < fn.args.size(); ++i)
      vars.push_back({"i" + std::to_string(i), fn.args[i]});
    bool first = true;
    for (const auto& a : all_assignments(m, vars)) {
      std::vector<int> args;
      for (size_t i = 0; i < fn.args.size(); ++i)
        args.push_back(a.at("i" + std::to_string(i)));
      if (!first) os << ", ";
      first = false;
      os << "(";
      for (size_t i = 0; i < args.size(); ++i) {
        if (i) os << ",";
        os << m.carriers[fn.args[i]][args[i]];
      }
      os << ")->" << m.carriers[fn.result][m.apply(static_cast<int>(f), args)];
    }
    os << " }\n";
  }
  for (size_t r = 0; r < m.sig.relations.size(); ++r) {
    const auto& rel = m.sig.relations[r];
    os << "rel " << rel.name << " = { ";
    bool first = true;
    for (const auto& tup : m.rel_interp[r]) {
      if (!first) os << ", ";
      first = false;
      os << "(";
      for (size_t i = 0; i < tup.size(); ++i) {
        if (i) os << ",";
        os << m.carriers[rel.args[i]][tup[i]];
      }
      os << ")";
    }
    os << " }\n";
  }
  return os.str();
}

}  // namespace poslog
