#include "poslog/pool.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace poslog {

std::string PoolParams::describe() const {
  std::ostringstream os;
  os << "pool(exists=" << exists_vars << ", nodes=" << max_nodes << ")";
  return os.str();
}

std::string FormulaPool::describe() const {
  std::ostringstream os;
  os << params.describe() << " over (";
  for (size_t i = 0; i < context.size(); ++i) {
    if (i) os << ", ";
    os << context[i].name << ":" << sig.sorts[context[i].sort];
  }
  os << "), " << formulas.size() << " formulas";
  return os.str();
}

namespace {

// Key invariant under permutations of each Exists binder list; used to drop
// logically-identical duplicates that differ only in binder order.
std::string perm_invariant_key(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind != K::Exists) {
    // Rebuild from children keys; cheap structural serialization.
    Formula g = f;
    return formula_key(g);
  }
  // Try all binder orders, take the least key of the whole node.
  std::vector<size_t> perm(f.binders.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::string best;
  do {
    Formula g = f;
    for (size_t i = 0; i < perm.size(); ++i) g.binders[i] = f.binders[perm[i]];
    std::string k = formula_key(g);
    if (best.empty() || k < best) best = k;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct Enumerator {
  const Signature& sig;
  const std::vector<TypedVar>& context;
  const PoolParams& params;
  std::optional<Error> err;

  // All terms of each sort over the given variables, node count <= max_nodes.
  std::vector<std::vector<Term>> terms_by_sort(
      const std::vector<TypedVar>& vars, int max_nodes) const {
    std::vector<std::vector<Term>> out(sig.sorts.size());
    for (const auto& v : vars)
      if (node_count(Term::mk_var(v.name)) <= max_nodes)
        out[v.sort].push_back(Term::mk_var(v.name));
    for (size_t c = 0; c < sig.constants.size(); ++c)
      out[sig.constants[c].sort].push_back(Term::mk_const(static_cast<int>(c)));
    for (int round = 0; round < max_nodes; ++round) {
      bool grew = false;
      for (size_t f = 0; f < sig.functions.size(); ++f) {
        const auto& fn = sig.functions[f];
        std::vector<std::vector<Term>> pools;
        bool any_empty = false;
        for (SortId s : fn.args) {
          pools.push_back(out[s]);
          if (out[s].empty()) any_empty = true;
        }
        if (any_empty || pools.empty()) continue;
        std::vector<size_t> idx(pools.size(), 0);
        while (true) {
          std::vector<Term> args;
          int nodes = 1;
          for (size_t i = 0; i < pools.size(); ++i) {
            args.push_back(pools[i][idx[i]]);
            nodes += node_count(pools[i][idx[i]]);
          }
          if (nodes <= max_nodes) {
            Term t = Term::mk_app(static_cast<int>(f), args);
            bool present = std::any_of(
                out[fn.result].begin(), out[fn.result].end(),
                [&](const Term& u) { return u == t; });
            if (!present) {
              out[fn.result].push_back(t);
              grew = true;
            }
          }
          int pos = static_cast<int>(idx.size()) - 1;
          while (pos >= 0) {
            if (++idx[pos] < pools[pos].size()) break;
            idx[pos] = 0;
            --pos;
          }
          if (pos < 0) break;
        }
      }
      if (!grew) break;
    }
    for (auto& v : out)
      std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) {
        int na = node_count(a), nb = node_count(b);
        if (na != nb) return na < nb;
        return term_key(a) < term_key(b);
      });
    return out;
  }

  // All atoms (equalities and relation atoms) over `vars`, canonical Eq
  // orientation only, node count <= max_nodes.
  std::vector<Formula> atoms_over(const std::vector<TypedVar>& vars,
                                  int max_nodes) const {
    auto terms = terms_by_sort(vars, max_nodes - 1);
    std::vector<Formula> out;
    for (size_t s = 0; s < sig.sorts.size(); ++s)
      for (size_t i = 0; i < terms[s].size(); ++i)
        for (size_t j = i; j < terms[s].size(); ++j) {
          Term lhs = terms[s][i], rhs = terms[s][j];
          if (term_key(rhs) < term_key(lhs)) std::swap(lhs, rhs);
          Formula f = eq(lhs, rhs);
          if (node_count(f) <= max_nodes) out.push_back(f);
        }
    for (size_t r = 0; r < sig.relations.size(); ++r) {
      const auto& rel = sig.relations[r];
      std::vector<std::vector<Term>> pools;
      bool any_empty = false;
      for (SortId s : rel.args) {
        pools.push_back(terms[s]);
        if (terms[s].empty()) any_empty = true;
      }
      if (any_empty) continue;
      if (pools.empty()) {
        out.push_back(atom(static_cast<int>(r), {}));
        continue;
      }
      std::vector<size_t> idx(pools.size(), 0);
      while (true) {
        std::vector<Term> args;
        for (size_t i = 0; i < pools.size(); ++i)
          args.push_back(pools[i][idx[i]]);
        Formula f = atom(static_cast<int>(r), args);
        if (node_count(f) <= max_nodes) out.push_back(f);
        int pos = static_cast<int>(idx.size()) - 1;
        while (pos >= 0) {
          if (++idx[pos] < pools[pos].size()) break;
          idx[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Conjunction sets of distinct atoms, strictly increasing in canonical
  // order, with total node count (atoms + And node when >= 2) <= budget.
  void conj_sets(const std::vector<Formula>& atoms, size_t start, int budget,
                 int spent, std::vector<Formula>& current,
                 std::vector<std::vector<Formula>>& out) const {
    if (!current.empty()) out.push_back(current);
    if (static_cast<int>(out.size()) > params.cap) return;
    for (size_t i = start; i < atoms.size(); ++i) {
      int n = node_count(atoms[i]);
      int and_node = current.empty() ? 0 : (current.size() == 1 ? 1 : 0);
      if (spent + n + and_node > budget) continue;
      current.push_back(atoms[i]);
      conj_sets(atoms, i + 1, budget, spent + n + and_node, current, out);
      current.pop_back();
    }
  }

  // Disjuncts: conjunctions of atoms, optionally under an Exists binding
  // u0, u1, ... (each binder must occur, first occurrences in index order).
  std::vector<Formula> disjuncts() {
    std::vector<Formula> out;
    std::set<std::string> seen;
    const int L = params.max_nodes;
    for (int k = 0; k <= params.exists_vars && !err; ++k) {
      std::vector<int> sorts(k, 0);
      while (!err) {
        std::vector<TypedVar> vars = context;
        std::vector<TypedVar> binders;
        for (int i = 0; i < k; ++i) {
          TypedVar b{"u" + std::to_string(i), sorts[i]};
          vars.push_back(b);
          binders.push_back(b);
        }
        int body_budget = L - (k > 0 ? 1 : 0);
        auto ats = atoms_over(vars, body_budget);
        std::vector<Formula> current;
        std::vector<std::vector<Formula>> sets;
        conj_sets(ats, 0, body_budget, 0, current, sets);
        for (const auto& set : sets) {
          bool ok = true;
          std::vector<int> first(k, -1);
          for (size_t idx = 0; idx < set.size(); ++idx)
            for (int i = 0; i < k; ++i)
              if (first[i] < 0 && uses_var(set[idx], "u" + std::to_string(i)))
                first[i] = static_cast<int>(idx);
          for (int i = 0; i < k && ok; ++i) {
            if (first[i] < 0) ok = false;
            if (i > 0 && first[i] < first[i - 1]) ok = false;
          }
          if (!ok) continue;
          Formula body = set.size() == 1 ? set[0] : conj(set);
          Formula d = k == 0 ? body : exists(binders, body);
          if (node_count(d) > L) continue;
          if (seen.insert(perm_invariant_key(d)).second) out.push_back(d);
          if (static_cast<int>(out.size()) > params.cap) {
            err = Error{"PoolBlowup",
                        "formula pool exceeds cap; lower max_nodes", {}};
            return out;
          }
        }
        int pos = k - 1;
        while (pos >= 0) {
          if (++sorts[pos] < static_cast<int>(sig.sorts.size())) break;
          sorts[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
      if (sig.sorts.empty()) break;
    }
    std::sort(out.begin(), out.end(), canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Formula> run() {
    std::vector<Formula> pool;
    pool.push_back(bot());
    pool.push_back(top());
    auto ds = disjuncts();
    if (err) return pool;
    for (const auto& d : ds) pool.push_back(d);
    // Or-sets of >= 2 disjuncts, strictly increasing, within the budget.
    std::vector<Formula> current;
    std::function<void(size_t, int)> rec = [&](size_t start, int spent) {
      if (err) return;
      if (current.size() >= 2) {
        pool.push_back(disj(current));
        if (static_cast<int>(pool.size()) > params.cap) {
          err = Error{"PoolBlowup",
                      "formula pool exceeds cap; lower max_nodes", {}};
          return;
        }
      }
      for (size_t i = start; i < ds.size(); ++i) {
        int n = node_count(ds[i]);
        if (spent + n > params.max_nodes) continue;
        current.push_back(ds[i]);
        rec(i + 1, spent + n);
        current.pop_back();
      }
    };
    rec(0, 1);  // 1 = the Or node
    if (err) return pool;
    std::sort(pool.begin(), pool.end(), canonical_less);
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return pool;
  }
};

}  // namespace

Result<FormulaPool> build_pool(const Signature& sig,
                               const std::vector<TypedVar>& context,
                               const PoolParams& params) {
  Enumerator en{sig, context, params, std::nullopt};
  FormulaPool pool{sig, context, params, {}};
  pool.formulas = en.run();
  if (en.err) return Result<FormulaPool>::fail(*en.err);
  return Result<FormulaPool>::ok(std::move(pool));
}

Result<FormulaPool> build_qf_pool(const Signature& sig,
                                  const std::vector<TypedVar>& context,
                                  int max_nodes, int cap) {
  PoolParams p;
  p.exists_vars = 0;
  p.max_nodes = max_nodes;
  p.cap = cap;
  return build_pool(sig, context, p);
}

}  // namespace poslog
