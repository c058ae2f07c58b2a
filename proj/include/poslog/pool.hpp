#pragma once

// Finite canonical formula pools: the bounded surrogate for "every formula
// phi(x)" quantifiers. A pool enumerates, in a fixed deterministic order,
// all canonical formulas in regular-disjunction shape over a signature and
// free-variable context, within a quantifier budget and a node-count bound.

#include "poslog/syntax.hpp"

namespace poslog {

struct PoolParams {
  int exists_vars = 2;      // bound-variable budget per disjunct
  int max_nodes = 10;       // node count, terms included
  int cap = 200000;         // hard limit on enumerated formulas

  std::string describe() const;
};

struct FormulaPool {
  Signature sig;
  std::vector<TypedVar> context;  // free-variable slots, in order
  PoolParams params;
  std::vector<Formula> formulas;  // canonical order: (node count, key)

  std::string describe() const;
};

// Enumerates the pool. Fails with PoolBlowup if the cap is exceeded.
Result<FormulaPool> build_pool(const Signature& sig,
                               const std::vector<TypedVar>& context,
                               const PoolParams& params);

// Quantifier-free variant (exists_vars = 0).
Result<FormulaPool> build_qf_pool(const Signature& sig,
                                  const std::vector<TypedVar>& context,
                                  int max_nodes, int cap = 200000);

}  // namespace poslog
