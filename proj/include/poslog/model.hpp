#pragma once

// Finite structures, satisfaction of positive formulas, positive diagrams,
// directed unions with quotienting, and the hyperimaginary quotient M^E.

#include <set>

#include "poslog/syntax.hpp"

namespace poslog {

// A finite multi-sorted structure. Interpretations are total; carriers may
// be empty. Element order within a carrier is the canonical order.
struct Structure {
  Signature sig;
  std::vector<std::vector<std::string>> carriers;  // per sort: element names
  std::vector<int> const_interp;                   // per constant: element
  // per function: row-major table indexed by argument tuple (lex order)
  std::vector<std::vector<int>> func_interp;
  std::vector<std::set<std::vector<int>>> rel_interp;

  int carrier_size(SortId s) const { return static_cast<int>(carriers[s].size()); }
  int total_size() const;
  int element_id(SortId s, const std::string& name) const;

  // Row-major index of an argument tuple for function `fn`.
  int tuple_index(int fn, const std::vector<int>& args) const;
  int apply(int fn, const std::vector<int>& args) const;
  bool holds(int rel, const std::vector<int>& args) const;

  // Checks totality and range of every interpretation.
  std::optional<Error> validate() const;

  bool operator==(const Structure&) const = default;
};

// Sort-indexed partial map between two structures; -1 marks unassigned.
// Totality/homomorphism verification lives in morphism.hpp.
struct StructureMap {
  std::vector<std::vector<int>> img;  // per sort, per source element

  static StructureMap empty_for(const Structure& src);
  static StructureMap identity_for(const Structure& s);
  bool total() const;
  bool operator==(const StructureMap&) const = default;
};

// Variable assignment: name -> element index (sorts implied by context).
using Assignment = std::map<std::string, int>;

// Term denotation; the term must be well-sorted and the assignment must
// cover its variables.
int eval_term(const Structure& m, const Term& t, const Assignment& a);

// Tarskian satisfaction restricted to the positive fragment.
bool eval(const Structure& m, const Formula& f, const Assignment& a);

struct ModelCheck {
  bool ok = true;
  int axiom = -1;          // first failing axiom index
  Assignment counter;      // canonically first counter-assignment
};

// True iff every axiom of `t` holds under every assignment.
ModelCheck check_model(const Structure& m, const Theory& t);

// The positive diagram: the extended signature (one fresh constant per
// element) plus the ground facts of M, canonically ordered.
struct Diagram {
  Signature extended;
  std::vector<Formula> facts;                 // ground sentences
  std::vector<std::vector<int>> elem_const;   // per sort/elem: constant id
};
Diagram positive_diagram(const Structure& m);

// Union of a finite chain M0 -> M1 -> ... -> Mn built by the quotient
// construction: carriers are equivalence classes of the disjoint union,
// relations hold when some stage has a true representative tuple.
struct DirectedUnion {
  Structure union_structure;
  std::vector<StructureMap> projections;  // one per chain stage
};
Result<DirectedUnion> directed_union(const std::vector<Structure>& chain,
                                     const std::vector<StructureMap>& links);

// Finite surrogate of a type-definable equivalence relation: one positive
// formula E(x1..xm, y1..ym) over doubled variables of the given sort tuple.
struct EquivSpec {
  std::vector<SortId> sorts;  // the quotiented sort tuple (length m)
  Formula relation;           // over variables x0..x{m-1}, y0..y{m-1}
};

// A relation template for the quotient: phi over `real` extra slots plus
// `classes` many class slots (each standing for an m-tuple of real vars).
// Variable naming convention inside `phi`: real slot i is r<i>, class slot
// j's representatives are k<j>_0 .. k<j>_{m-1}.
struct QuotientTemplate {
  std::string name;            // name of the emitted relation R_phi
  std::vector<SortId> real;    // sorts of the real slots
  int classes = 0;             // number of class slots
  Formula phi;
};

struct Quotient {
  Structure extended;                      // M plus sort S_E and the R_phi
  SortId class_sort = -1;
  std::vector<std::vector<int>> classes;   // per class: member tuple ids
  std::vector<int> class_of;               // per tuple id: class index
  std::vector<std::vector<int>> tuples;    // tuple id -> element tuple
};

// M^E at finite scale. Fails with NotReflexive/NotSymmetric/NotTransitive
// carrying a concrete counter-tuple when E is not an equivalence on M.
Result<Quotient> quotient_heq(const Structure& m, const EquivSpec& e,
                              const std::vector<QuotientTemplate>& family);

// f^E with f^E([a]) = [f(a)] on the already-built quotient `q`.
Result<StructureMap> lift_automorphism(const Structure& m,
                                       const StructureMap& f,
                                       const EquivSpec& e, const Quotient& q);

// Canonical text form (the .pstruct file format).
std::string to_string(const Structure& m);

// Enumeration helpers: all assignments of `vars` over m's carriers in lex
// order (by element index). Empty carrier for a needed sort yields none.
std::vector<Assignment> all_assignments(const Structure& m,
                                        const std::vector<TypedVar>& vars);

}  // namespace poslog
