#include "support/fixtures.hpp"

namespace poslog::testing {

namespace {

void enumerate_rel_tables(const Signature& sig, Structure base, size_t rel,
                          std::vector<Structure>& out) {
  if (rel == sig.relations.size()) {
    out.push_back(std::move(base));
    return;
  }
  // All tuples of the relation's arity.
  std::vector<std::vector<int>> tuples;
  {
    const auto& args = sig.relations[rel].args;
    std::vector<int> idx(args.size(), 0);
    bool empty = false;
    for (SortId s : args)
      if (base.carrier_size(s) == 0) empty = true;
    if (!empty) {
      while (true) {
        tuples.push_back(idx);
        int pos = static_cast<int>(idx.size()) - 1;
        while (pos >= 0) {
          if (++idx[pos] < base.carrier_size(args[pos])) break;
          idx[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
        if (args.empty()) break;
      }
      if (args.empty()) tuples.resize(1);
    }
  }
  size_t count = size_t{1} << tuples.size();
  for (size_t mask = 0; mask < count; ++mask) {
    Structure next = base;
    for (size_t i = 0; i < tuples.size(); ++i)
      if (mask & (size_t{1} << i)) next.rel_interp[rel].insert(tuples[i]);
    enumerate_rel_tables(sig, std::move(next), rel + 1, out);
  }
}

void enumerate_funcs(const Signature& sig, Structure base, size_t fn,
                     std::vector<Structure>& out) {
  if (fn == sig.functions.size()) {
    enumerate_rel_tables(sig, std::move(base), 0, out);
    return;
  }
  const auto& f = sig.functions[fn];
  size_t cells = 1;
  for (SortId s : f.args) cells *= static_cast<size_t>(base.carrier_size(s));
  int range = base.carrier_size(f.result);
  if (range == 0 && cells > 0) return;  // no total function exists
  std::vector<int> table(cells, 0);
  while (true) {
    Structure next = base;
    next.func_interp[fn] = table;
    enumerate_funcs(sig, std::move(next), fn + 1, out);
    int pos = static_cast<int>(cells) - 1;
    while (pos >= 0) {
      if (++table[pos] < range) break;
      table[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    if (cells == 0) break;
  }
}

void enumerate_consts(const Signature& sig, Structure base, size_t c,
                      std::vector<Structure>& out) {
  if (c == sig.constants.size()) {
    enumerate_funcs(sig, std::move(base), 0, out);
    return;
  }
  int range = base.carrier_size(sig.constants[c].sort);
  for (int v = 0; v < range; ++v) {
    Structure next = base;
    next.const_interp[c] = v;
    enumerate_consts(sig, std::move(next), c + 1, out);
  }
}

}  // namespace

std::vector<Structure> all_structures(const Signature& sig,
                                      const std::vector<int>& sizes) {
  Structure base;
  base.sig = sig;
  base.carriers.resize(sig.sorts.size());
  for (size_t s = 0; s < sig.sorts.size(); ++s)
    for (int i = 0; i < sizes[s]; ++i)
      base.carriers[s].push_back(sig.sorts[s] + std::to_string(i));
  base.const_interp.assign(sig.constants.size(), -1);
  base.func_interp.resize(sig.functions.size());
  base.rel_interp.resize(sig.relations.size());
  std::vector<Structure> out;
  enumerate_consts(sig, std::move(base), 0, out);
  return out;
}

std::vector<Structure> all_structures_up_to(const Signature& sig, int lo,
                                            int hi) {
  std::vector<Structure> out;
  std::vector<int> sizes(sig.sorts.size(), lo);
  if (sig.sorts.empty()) return all_structures(sig, sizes);
  while (true) {
    auto batch = all_structures(sig, sizes);
    for (auto& m : batch) out.push_back(std::move(m));
    int pos = static_cast<int>(sizes.size()) - 1;
    while (pos >= 0) {
      if (++sizes[pos] <= hi) break;
      sizes[pos] = lo;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

Formula random_formula(std::mt19937& rng, const Signature& sig,
                       const std::vector<TypedVar>& context, int depth) {
  auto pick_term = [&](SortId sort) -> std::optional<Term> {
    std::vector<Term> opts;
    for (const auto& v : context)
      if (v.sort == sort) opts.push_back(Term::mk_var(v.name));
    for (size_t c = 0; c < sig.constants.size(); ++c)
      if (sig.constants[c].sort == sort)
        opts.push_back(Term::mk_const(static_cast<int>(c)));
    if (opts.empty()) return std::nullopt;
    return opts[rng() % opts.size()];
  };
  // leaf: atom, equality, true, false
  auto leaf = [&]() -> Formula {
    for (int attempt = 0; attempt < 8; ++attempt) {
      int kind = static_cast<int>(rng() % 4);
      if (kind == 0) return rng() % 4 == 0 ? bot() : top();
      if (kind <= 2 && !sig.relations.empty()) {
        int r = static_cast<int>(rng() % sig.relations.size());
        std::vector<Term> args;
        bool ok = true;
        for (SortId s : sig.relations[r].args) {
          auto t = pick_term(s);
          if (!t) ok = false; else args.push_back(*t);
        }
        if (ok) return atom(r, args);
        continue;
      }
      if (sig.sorts.empty()) return top();
      SortId s = static_cast<SortId>(rng() % sig.sorts.size());
      auto t1 = pick_term(s);
      auto t2 = pick_term(s);
      if (t1 && t2) return eq(*t1, *t2);
    }
    return top();
  };
  if (depth <= 0) return leaf();
  switch (rng() % 4) {
    case 0: {
      int n = 2 + static_cast<int>(rng() % 2);
      std::vector<Formula> kids;
      for (int i = 0; i < n; ++i)
        kids.push_back(random_formula(rng, sig, context, depth - 1));
      return conj(std::move(kids));
    }
    case 1: {
      int n = 2 + static_cast<int>(rng() % 2);
      std::vector<Formula> kids;
      for (int i = 0; i < n; ++i)
        kids.push_back(random_formula(rng, sig, context, depth - 1));
      return disj(std::move(kids));
    }
    case 2: {
      SortId s = sig.sorts.empty() ? 0 : static_cast<SortId>(rng() % sig.sorts.size());
      std::string name = "z" + std::to_string(rng() % 3) + "_" + std::to_string(depth);
      auto inner = context;
      inner.push_back({name, s});
      return exists({{name, s}}, random_formula(rng, sig, inner, depth - 1));
    }
    default:
      return leaf();
  }
}

Structure random_structure(std::mt19937& rng, const Signature& sig, int lo,
                           int hi) {
  Structure m;
  m.sig = sig;
  m.carriers.resize(sig.sorts.size());
  for (size_t s = 0; s < sig.sorts.size(); ++s) {
    int n = lo + static_cast<int>(rng() % (hi - lo + 1));
    for (int i = 0; i < n; ++i)
      m.carriers[s].push_back(sig.sorts[s] + std::to_string(i));
  }
  m.const_interp.resize(sig.constants.size());
  for (size_t c = 0; c < sig.constants.size(); ++c) {
    int n = m.carrier_size(sig.constants[c].sort);
    if (n == 0) {  // constants force inhabited sorts
      m.carriers[sig.constants[c].sort].push_back(sig.sorts[sig.constants[c].sort] + "0");
      n = 1;
    }
    m.const_interp[c] = static_cast<int>(rng() % n);
  }
  m.func_interp.resize(sig.functions.size());
  for (size_t f = 0; f < sig.functions.size(); ++f) {
    const auto& fn = sig.functions[f];
    size_t cells = 1;
    for (SortId s : fn.args) cells *= static_cast<size_t>(m.carrier_size(s));
    int range = m.carrier_size(fn.result);
    if (range == 0 && cells > 0) {
      m.carriers[fn.result].push_back(sig.sorts[fn.result] + "0");
      range = 1;
    }
    m.func_interp[f].resize(cells);
    for (auto& v : m.func_interp[f]) v = static_cast<int>(rng() % range);
  }
  m.rel_interp.resize(sig.relations.size());
  for (size_t r = 0; r < sig.relations.size(); ++r) {
    const auto& rel = sig.relations[r];
    std::vector<int> idx(rel.args.size(), 0);
    bool empty = false;
    for (SortId s : rel.args)
      if (m.carrier_size(s) == 0) empty = true;
    if (empty) continue;
    while (true) {
      if (rng() % 2) m.rel_interp[r].insert(idx);
      int pos = static_cast<int>(idx.size()) - 1;
      while (pos >= 0) {
        if (++idx[pos] < m.carrier_size(rel.args[pos])) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      if (rel.args.empty()) break;
    }
  }
  return m;
}

}  // namespace poslog::testing
