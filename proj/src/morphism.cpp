#include "poslog/morphism.hpp"

#include <algorithm>

namespace poslog {

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::UnknownAtBound: return "UnknownAtBound";
  }
  return "?";
}

std::optional<Error> verify_homomorphism(const Structure& m, const Structure& n,
                                         const StructureMap& f) {
  if (!(m.sig == n.sig))
    return Error{"SignatureMismatch", "source and target signatures differ", {}};
  if (f.img.size() != m.carriers.size())
    return Error{"NotAHomomorphism", "map has wrong sort count", {}};
  for (size_t s = 0; s < m.carriers.size(); ++s) {
    if (f.img[s].size() != m.carriers[s].size())
      return Error{"NotAHomomorphism", "map is not total on sort '" +
                                           m.sig.sorts[s] + "'", {}};
    for (int v : f.img[s])
      if (v < 0 || v >= n.carrier_size(static_cast<SortId>(s)))
        return Error{"NotAHomomorphism", "map leaves the target carrier", {}};
  }
  for (size_t c = 0; c < m.sig.constants.size(); ++c) {
    SortId s = m.sig.constants[c].sort;
    if (f.img[s][m.const_interp[c]] != n.const_interp[c])
      return Error{"NotAHomomorphism",
                   "constant '" + m.sig.constants[c].name + "' not preserved", {}};
  }
  for (size_t fn = 0; fn < m.sig.functions.size(); ++fn) {
    const auto& sym = m.sig.functions[fn];
    std::vector<TypedVar> vars;
    for (size_t i = 0; i < sym.args.size(); ++i)
      vars.push_back({"i" + std::to_string(i), sym.args[i]});
    for (const auto& a : all_assignments(m, vars)) {
      std::vector<int> src, dst;
      for (size_t i = 0; i < sym.args.size(); ++i) {
        int e = a.at("i" + std::to_string(i));
        src.push_back(e);
        dst.push_back(f.img[sym.args[i]][e]);
      }
      int lhs = f.img[sym.result][m.apply(static_cast<int>(fn), src)];
      int rhs = n.apply(static_cast<int>(fn), dst);
      if (lhs != rhs)
        return Error{"NotAHomomorphism",
                     "function '" + sym.name + "' does not commute", {}};
    }
  }
  for (size_t r = 0; r < m.sig.relations.size(); ++r) {
    const auto& rel = m.sig.relations[r];
    for (const auto& tup : m.rel_interp[r]) {
      std::vector<int> img;
      for (size_t i = 0; i < tup.size(); ++i)
        img.push_back(f.img[rel.args[i]][tup[i]]);
      if (!n.holds(static_cast<int>(r), img))
        return Error{"NotAHomomorphism",
                     "relation '" + rel.name + "' not preserved", {}};
    }
  }
  return std::nullopt;
}

std::optional<Error> verify_isomorphism(const Structure& m, const Structure& n,
                                        const StructureMap& f) {
  if (auto e = verify_homomorphism(m, n, f)) return e;
  StructureMap inv;
  inv.img.resize(n.carriers.size());
  for (size_t s = 0; s < n.carriers.size(); ++s) {
    inv.img[s].assign(n.carriers[s].size(), -1);
    for (size_t e = 0; e < f.img[s].size(); ++e) {
      if (inv.img[s][f.img[s][e]] != -1)
        return Error{"NotAnIsomorphism", "map is not injective", {}};
      inv.img[s][f.img[s][e]] = static_cast<int>(e);
    }
    for (int v : inv.img[s])
      if (v < 0) return Error{"NotAnIsomorphism", "map is not surjective", {}};
  }
  if (auto e = verify_homomorphism(n, m, inv))
    return Error{"NotAnIsomorphism", "inverse is not a homomorphism", {}};
  return std::nullopt;
}

std::optional<Error> verify_automorphism(const Structure& m,
                                         const StructureMap& f) {
  return verify_isomorphism(m, m, f);
}

// --- homomorphism search ----------------------------------------------------

namespace {

// Cells in canonical order: (sort, element) pairs.
struct HomSearch {
  const Structure& m;
  const Structure& n;
  std::vector<std::pair<int, int>> cells;
  StructureMap map;
  std::vector<StructureMap> found;
  int limit;

  HomSearch(const Structure& m_, const Structure& n_, const StructureMap& seed,
            int limit_)
      : m(m_), n(n_), map(seed), limit(limit_) {
    for (size_t s = 0; s < m.carriers.size(); ++s)
      for (size_t e = 0; e < m.carriers[s].size(); ++e)
        cells.push_back({static_cast<int>(s), static_cast<int>(e)});
  }

  bool assigned(int s, int e) const { return map.img[s][e] >= 0; }

  // Checks every constraint whose participants are all assigned and which
  // involves (s, e).
  bool consistent(int s, int e) const {
    for (size_t c = 0; c < m.sig.constants.size(); ++c) {
      if (static_cast<int>(m.sig.constants[c].sort) == s &&
          m.const_interp[c] == e &&
          map.img[s][e] != n.const_interp[c])
        return false;
    }
    for (size_t fn = 0; fn < m.sig.functions.size(); ++fn) {
      const auto& sym = m.sig.functions[fn];
      std::vector<TypedVar> vars;
      for (size_t i = 0; i < sym.args.size(); ++i)
        vars.push_back({"i" + std::to_string(i), sym.args[i]});
      for (const auto& a : all_assignments(m, vars)) {
        std::vector<int> src;
        bool involves = false;
        for (size_t i = 0; i < sym.args.size(); ++i) {
          int el = a.at("i" + std::to_string(i));
          src.push_back(el);
          if (static_cast<int>(sym.args[i]) == s && el == e) involves = true;
        }
        int res = m.apply(static_cast<int>(fn), src);
        if (static_cast<int>(sym.result) == s && res == e) involves = true;
        if (!involves) continue;
        bool all = assigned(sym.result, res);
        std::vector<int> dst;
        for (size_t i = 0; i < sym.args.size() && all; ++i) {
          if (!assigned(sym.args[i], src[i])) all = false;
          else dst.push_back(map.img[sym.args[i]][src[i]]);
        }
        if (!all) continue;
        if (n.apply(static_cast<int>(fn), dst) != map.img[sym.result][res])
          return false;
      }
    }
    for (size_t r = 0; r < m.sig.relations.size(); ++r) {
      const auto& rel = m.sig.relations[r];
      for (const auto& tup : m.rel_interp[r]) {
        bool involves = false, all = true;
        std::vector<int> img;
        for (size_t i = 0; i < tup.size(); ++i) {
          if (static_cast<int>(rel.args[i]) == s && tup[i] == e) involves = true;
          if (!assigned(rel.args[i], tup[i])) all = false;
          else img.push_back(map.img[rel.args[i]][tup[i]]);
        }
        if (!involves || !all) continue;
        if (!n.holds(static_cast<int>(r), img)) return false;
      }
    }
    return true;
  }

  // Returns true when the search should stop (the limit was reached).
  bool run(size_t cell) {
    if (cell == cells.size()) {
      found.push_back(map);
      return limit > 0 && static_cast<int>(found.size()) >= limit;
    }
    auto [s, e] = cells[cell];
    if (assigned(s, e)) return consistent(s, e) && run(cell + 1);
    for (int v = 0; v < n.carrier_size(s); ++v) {
      map.img[s][e] = v;
      bool stop = consistent(s, e) && run(cell + 1);
      map.img[s][e] = -1;
      if (stop) return true;
    }
    return false;
  }
};

}  // namespace

std::vector<StructureMap> find_homomorphisms(const Structure& m,
                                             const Structure& n,
                                             const StructureMap& seed,
                                             int limit) {
  HomSearch search(m, n, seed, limit);
  search.run(0);
  // The backtracking order already is the canonical order; every result
  // passes the independent verifier.
  for (const auto& f : search.found)
    if (auto e = verify_homomorphism(m, n, f))
      throw std::logic_error("hom search returned a non-homomorphism: " +
                             e->render());
  return search.found;
}

std::vector<StructureMap> find_homomorphisms(const Structure& m,
                                             const Structure& n, int limit) {
  return find_homomorphisms(m, n, StructureMap::empty_for(m), limit);
}

std::vector<StructureMap> find_automorphisms(const Structure& m) {
  std::vector<StructureMap> out;
  for (const auto& f : find_homomorphisms(m, m, 0))
    if (!verify_isomorphism(m, m, f)) out.push_back(f);
  return out;
}

// --- immersion ---------------------------------------------------------------

Verdict check_immersion(const Structure& m, const Structure& n,
                        const StructureMap& f, const FormulaPool& pool) {
  if (auto e = verify_homomorphism(m, n, f))
    throw std::runtime_error(e->render());
  Verdict v = Verdict::mk_holds();
  v.pool_desc = pool.describe();
  for (const auto& phi : pool.formulas) {
    for (const auto& a : all_assignments(m, pool.context)) {
      Assignment fa = map_assignment(a, pool.context, f);
      bool src = eval(m, phi, a);
      bool dst = eval(n, phi, fa);
      if (src != dst) {
        Verdict fail = Verdict::mk_fails();
        fail.pool_desc = pool.describe();
        fail.phi = phi;
        fail.assignment = a;
        if (!src && dst)
          fail.notes.push_back("target satisfies phi(f(a)), source does not");
        else
          fail.notes.push_back(
              "source satisfies phi(a), target does not (not a homomorphism "
              "consequence; phi uses context sorts with empty carriers)");
        return fail;
      }
    }
  }
  return v;
}

// --- isomorphism -------------------------------------------------------------

namespace {

struct IsoSearch {
  const Structure& m;
  const Structure& n;
  StructureMap fwd;                 // m -> n
  std::vector<std::vector<int>> bwd;  // n -> m
  std::optional<StructureMap> result;

  IsoSearch(const Structure& m_, const Structure& n_, const StructureMap& seed)
      : m(m_), n(n_), fwd(seed) {
    bwd.resize(n.carriers.size());
    for (size_t s = 0; s < n.carriers.size(); ++s)
      bwd[s].assign(n.carriers[s].size(), -1);
  }

  bool seed_ok() {
    for (size_t s = 0; s < m.carriers.size(); ++s)
      for (size_t e = 0; e < fwd.img[s].size(); ++e) {
        int v = fwd.img[s][e];
        if (v < 0) continue;
        if (v >= n.carrier_size(static_cast<SortId>(s))) return false;
        if (bwd[s][v] != -1) return false;
        bwd[s][v] = static_cast<int>(e);
      }
    return true;
  }

  // Partial-isomorphism consistency around a newly added pair (s, a -> b).
  bool consistent(int s, int a) const {
    int b = fwd.img[s][a];
    for (size_t c = 0; c < m.sig.constants.size(); ++c) {
      if (static_cast<int>(m.sig.constants[c].sort) != s) continue;
      bool src_is = m.const_interp[c] == a;
      bool dst_is = n.const_interp[c] == b;
      if (src_is != dst_is) return false;
    }
    for (size_t fn = 0; fn < m.sig.functions.size(); ++fn) {
      const auto& sym = m.sig.functions[fn];
      std::vector<TypedVar> vars;
      for (size_t i = 0; i < sym.args.size(); ++i)
        vars.push_back({"i" + std::to_string(i), sym.args[i]});
      for (const auto& asg : all_assignments(m, vars)) {
        std::vector<int> src, dst;
        bool all = true;
        for (size_t i = 0; i < sym.args.size(); ++i) {
          int el = asg.at("i" + std::to_string(i));
          src.push_back(el);
          if (fwd.img[sym.args[i]][el] < 0) all = false;
          else dst.push_back(fwd.img[sym.args[i]][el]);
        }
        if (!all) continue;
        int res = m.apply(static_cast<int>(fn), src);
        int nres = n.apply(static_cast<int>(fn), dst);
        if (fwd.img[sym.result][res] >= 0 &&
            fwd.img[sym.result][res] != nres)
          return false;
        if (fwd.img[sym.result][res] < 0 && bwd[sym.result][nres] >= 0)
          return false;
      }
    }
    for (size_t r = 0; r < m.sig.relations.size(); ++r) {
      const auto& rel = m.sig.relations[r];
      // all tuples over mapped elements must agree in both directions
      std::vector<TypedVar> vars;
      for (size_t i = 0; i < rel.args.size(); ++i)
        vars.push_back({"i" + std::to_string(i), rel.args[i]});
      for (const auto& asg : all_assignments(m, vars)) {
        std::vector<int> src, dst;
        bool all = true, involves = false;
        for (size_t i = 0; i < rel.args.size(); ++i) {
          int el = asg.at("i" + std::to_string(i));
          src.push_back(el);
          if (static_cast<int>(rel.args[i]) == s && el == a) involves = true;
          if (fwd.img[rel.args[i]][el] < 0) all = false;
          else dst.push_back(fwd.img[rel.args[i]][el]);
        }
        if (!all || !involves) continue;
        if (m.holds(static_cast<int>(r), src) != n.holds(static_cast<int>(r), dst))
          return false;
      }
    }
    return true;
  }

  std::pair<int, int> next_unmapped_src() const {
    for (size_t s = 0; s < m.carriers.size(); ++s)
      for (size_t e = 0; e < fwd.img[s].size(); ++e)
        if (fwd.img[s][e] < 0) return {static_cast<int>(s), static_cast<int>(e)};
    return {-1, -1};
  }

  std::pair<int, int> next_unmapped_dst() const {
    for (size_t s = 0; s < bwd.size(); ++s)
      for (size_t e = 0; e < bwd[s].size(); ++e)
        if (bwd[s][e] < 0) return {static_cast<int>(s), static_cast<int>(e)};
    return {-1, -1};
  }

  // Alternating schedule: forth on the least unmapped source element, then
  // back on the least unmapped target element.
  bool run(bool forth) {
    if (forth) {
      auto [s, e] = next_unmapped_src();
      if (s < 0) {
        auto [s2, e2] = next_unmapped_dst();
        if (s2 >= 0) return run(false);
        result = fwd;
        return true;
      }
      for (int v = 0; v < n.carrier_size(s); ++v) {
        if (bwd[s][v] >= 0) continue;
        fwd.img[s][e] = v;
        bwd[s][v] = e;
        if (consistent(s, e) && run(false)) return true;
        fwd.img[s][e] = -1;
        bwd[s][v] = -1;
      }
      return false;
    }
    auto [s, e] = next_unmapped_dst();
    if (s < 0) return run(true);
    for (int v = 0; v < m.carrier_size(s); ++v) {
      if (fwd.img[s][v] >= 0) continue;
      fwd.img[s][v] = e;
      bwd[s][e] = v;
      if (consistent(s, v) && run(true)) return true;
      fwd.img[s][v] = -1;
      bwd[s][e] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<StructureMap> find_isomorphism(const Structure& m,
                                             const Structure& n,
                                             const StructureMap& seed) {
  if (!(m.sig == n.sig)) return std::nullopt;
  for (size_t s = 0; s < m.carriers.size(); ++s)
    if (m.carriers[s].size() != n.carriers[s].size()) return std::nullopt;
  IsoSearch search(m, n, seed);
  if (!search.seed_ok()) return std::nullopt;
  // Validate the seed pairs.
  for (size_t s = 0; s < m.carriers.size(); ++s)
    for (size_t e = 0; e < search.fwd.img[s].size(); ++e)
      if (search.fwd.img[s][e] >= 0 &&
          !search.consistent(static_cast<int>(s), static_cast<int>(e)))
        return std::nullopt;
  if (!search.run(true)) return std::nullopt;
  if (verify_isomorphism(m, n, *search.result)) return std::nullopt;
  return search.result;
}

std::optional<StructureMap> find_isomorphism(const Structure& m,
                                             const Structure& n) {
  return find_isomorphism(m, n, StructureMap::empty_for(m));
}

StructureMap compose(const StructureMap& f, const StructureMap& g) {
  StructureMap out = f;
  for (size_t s = 0; s < f.img.size(); ++s)
    for (size_t e = 0; e < f.img[s].size(); ++e)
      out.img[s][e] = f.img[s][e] < 0 ? -1 : g.img[s][f.img[s][e]];
  return out;
}

Assignment map_assignment(const Assignment& a,
                          const std::vector<TypedVar>& vars,
                          const StructureMap& f) {
  Assignment out;
  for (const auto& v : vars) {
    auto it = a.find(v.name);
    if (it != a.end()) out[v.name] = f.img[v.sort][it->second];
  }
  return out;
}

}  // namespace poslog
