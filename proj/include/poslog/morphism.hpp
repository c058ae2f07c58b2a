#pragma once

// Homomorphism, immersion and isomorphism search between finite structures.
// All searches are deterministic backtracking in canonical element order;
// returned witnesses are the canonically least ones.

#include "poslog/model.hpp"
#include "poslog/pool.hpp"
#include "poslog/verdict.hpp"

namespace poslog {

// Empty when `f` is a total homomorphism M -> N; otherwise a description of
// the first violated condition.
std::optional<Error> verify_homomorphism(const Structure& m, const Structure& n,
                                         const StructureMap& f);

// Also requires bijectivity and reflection of relations.
std::optional<Error> verify_isomorphism(const Structure& m, const Structure& n,
                                        const StructureMap& f);

std::optional<Error> verify_automorphism(const Structure& m,
                                         const StructureMap& f);

// Up to `limit` total homomorphisms extending `seed`, canonically ordered;
// limit = 0 enumerates all. The empty list is exact: no homomorphism exists.
std::vector<StructureMap> find_homomorphisms(const Structure& m,
                                             const Structure& n,
                                             const StructureMap& seed,
                                             int limit);

std::vector<StructureMap> find_homomorphisms(const Structure& m,
                                             const Structure& n, int limit);

// All automorphisms of m, canonically ordered.
std::vector<StructureMap> find_automorphisms(const Structure& m);

// Pool-relative immersion check: Holds if M |= phi(a) <=> N |= phi(f(a)) for
// every pool formula and every source assignment; Fails carries (phi, a).
Verdict check_immersion(const Structure& m, const Structure& n,
                        const StructureMap& f, const FormulaPool& pool);

// Back-and-forth search for an isomorphism extending `seed`; exact.
std::optional<StructureMap> find_isomorphism(const Structure& m,
                                             const Structure& n,
                                             const StructureMap& seed);
std::optional<StructureMap> find_isomorphism(const Structure& m,
                                             const Structure& n);

// Composition g after f (f: M -> N, g: N -> P).
StructureMap compose(const StructureMap& f, const StructureMap& g);

// Map images of an assignment through f.
Assignment map_assignment(const Assignment& a,
                          const std::vector<TypedVar>& vars,
                          const StructureMap& f);

}  // namespace poslog
